#include "oscone/convex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace oscone::convex {

using numerics::Complex;
using numerics::GeneralMatrix;
using numerics::HermMatrix;

namespace {

// Hermitian coefficient matrices extracting Re/Im of a single entry:
// Tr(sym(i,j) X) = Re x_ij, Tr(asym(i,j) X) = Im x_ij.
HermMatrix entry_sym(int dim, int i, int j) {
  HermMatrix f(dim);
  if (i == j)
    f.set(i, i, 1.0);
  else
    f.set(std::min(i, j), std::max(i, j), i < j ? Complex(0.5, 0.0) : Complex(0.5, 0.0));
  return f;
}

HermMatrix entry_asym(int dim, int i, int j) {
  HermMatrix f(dim);
  if (i == j) return f;  // Im of a diagonal entry vanishes
  // F = i/2 (E_ij - E_ji); store the upper-triangle representative.
  if (i < j)
    f.set(i, j, Complex(0.0, 0.5));
  else
    f.set(j, i, Complex(0.0, -0.5));
  return f;
}

int herm_coord_count(int dim) { return dim * dim; }

void herm_to_coords(const HermMatrix& m, double* out) {
  const int d = m.dim();
  int k = 0;
  for (int i = 0; i < d; ++i) out[k++] = m(i, i).real();
  const double s2 = std::sqrt(2.0);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      out[k++] = s2 * m(i, j).real();
      out[k++] = s2 * m(i, j).imag();
    }
}

HermMatrix coords_to_herm(const double* in, int d) {
  HermMatrix m(d);
  int k = 0;
  for (int i = 0; i < d; ++i) m.set(i, i, in[k++]);
  const double inv_s2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const double re = in[k++] * inv_s2;
      const double im = in[k++] * inv_s2;
      m.set(i, j, Complex(re, im));
    }
  return m;
}

// Eigendecomposition of a small real symmetric matrix, via the Hermitian
// solver.
struct SymEig {
  std::vector<double> values;
  std::vector<double> vectors;  // column-major n x n
};

SymEig sym_eig(const std::vector<double>& g, int n) {
  HermMatrix h(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) h.set(i, j, g[i * n + j]);
  const numerics::Spectrum sp = numerics::eigh(h);
  SymEig out;
  out.values = sp.eigenvalues;
  out.vectors.resize(static_cast<size_t>(n) * n);
  for (int c = 0; c < n; ++c)
    for (int i = 0; i < n; ++i) out.vectors[c * n + i] = sp.eigenvectors(i, c).real();
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// FeasibilityProblem

int FeasibilityProblem::add_psd_block(const std::string& name, int dim,
                                      double strictness) {
  if (dim <= 0) throw std::invalid_argument("add_psd_block: dim must be positive");
  if (strictness < 0.0)
    throw std::invalid_argument("add_psd_block: strictness must be nonnegative");
  blocks_.push_back({name, dim, BlockKind::psd, strictness});
  return static_cast<int>(blocks_.size()) - 1;
}

int FeasibilityProblem::add_free_block(const std::string& name, int dim) {
  if (dim <= 0) throw std::invalid_argument("add_free_block: dim must be positive");
  blocks_.push_back({name, dim, BlockKind::free_herm, 0.0});
  return static_cast<int>(blocks_.size()) - 1;
}

int FeasibilityProblem::block_index(const std::string& name) const {
  for (size_t i = 0; i < blocks_.size(); ++i)
    if (blocks_[i].name == name) return static_cast<int>(i);
  return -1;
}

void FeasibilityProblem::add_functional_constraint(
    std::vector<std::pair<int, HermMatrix>> coeffs, double target) {
  for (const auto& [b, f] : coeffs) {
    if (b < 0 || b >= static_cast<int>(blocks_.size()))
      throw std::invalid_argument("constraint references undeclared block");
    if (f.dim() != blocks_[b].dim)
      throw std::invalid_argument("constraint coefficient has wrong dimension");
  }
  rows_.push_back(std::move(coeffs));
  targets_.push_back(target);
}

void FeasibilityProblem::add_entry_constraint(const std::vector<EntryTerm>& terms,
                                              Complex target) {
  std::vector<std::pair<int, HermMatrix>> re_row, im_row;
  for (const auto& t : terms) {
    const int d = blocks_.at(t.block).dim;
    if (t.row < 0 || t.row >= d || t.col < 0 || t.col >= d)
      throw std::invalid_argument("entry constraint index out of range");
    const HermMatrix fs = entry_sym(d, t.row, t.col);
    const HermMatrix fa = entry_asym(d, t.row, t.col);
    // Re(c x) = Re(c) Re(x) - Im(c) Im(x);  Im(c x) = Im(c) Re(x) + Re(c) Im(x).
    re_row.emplace_back(t.block, fs * t.coeff.real() - fa * t.coeff.imag());
    const HermMatrix fim = fs * t.coeff.imag() + fa * t.coeff.real();
    if (fim.frobenius_norm() > 0.0) im_row.emplace_back(t.block, fim);
  }
  add_functional_constraint(std::move(re_row), target.real());
  if (im_row.empty()) {
    if (std::abs(target.imag()) > 1e-15)
      throw std::invalid_argument(
          "entry constraint: imaginary target with no imaginary-part terms");
  } else {
    add_functional_constraint(std::move(im_row), target.imag());
  }
}

void FeasibilityProblem::add_subblock_constraint(
    const std::vector<SubblockTerm>& terms, const GeneralMatrix& target) {
  for (int i = 0; i < target.rows(); ++i)
    for (int j = 0; j < target.cols(); ++j) {
      std::vector<EntryTerm> entry_terms;
      entry_terms.reserve(terms.size());
      for (const auto& t : terms)
        entry_terms.push_back({t.block, t.row_off + i, t.col_off + j, t.coeff});
      add_entry_constraint(entry_terms, target(i, j));
    }
}

int FeasibilityProblem::ambient_dim() const {
  int n = 0;
  for (const auto& b : blocks_) n += herm_coord_count(b.dim);
  return n;
}

std::vector<double> FeasibilityProblem::vectorize(
    const std::vector<HermMatrix>& point) const {
  if (point.size() != blocks_.size())
    throw std::invalid_argument("vectorize: wrong number of blocks");
  std::vector<double> x(ambient_dim(), 0.0);
  int off = 0;
  for (size_t b = 0; b < blocks_.size(); ++b) {
    if (point[b].dim() != blocks_[b].dim)
      throw std::invalid_argument("vectorize: block dimension mismatch");
    herm_to_coords(point[b], x.data() + off);
    off += herm_coord_count(blocks_[b].dim);
  }
  return x;
}

std::vector<HermMatrix> FeasibilityProblem::unvectorize(
    const std::vector<double>& x) const {
  std::vector<HermMatrix> point;
  point.reserve(blocks_.size());
  int off = 0;
  for (const auto& b : blocks_) {
    point.push_back(coords_to_herm(x.data() + off, b.dim));
    off += herm_coord_count(b.dim);
  }
  return point;
}

std::vector<double> FeasibilityProblem::constraint_row(int c) const {
  std::vector<double> row(ambient_dim(), 0.0);
  for (const auto& [b, f] : rows_[c]) {
    int off = 0;
    for (int k = 0; k < b; ++k) off += herm_coord_count(blocks_[k].dim);
    std::vector<double> coords(herm_coord_count(blocks_[b].dim));
    herm_to_coords(f, coords.data());
    for (size_t k = 0; k < coords.size(); ++k) row[off + k] += coords[k];
  }
  return row;
}

// ---------------------------------------------------------------------------
// AffineProjector

AffineProjector::AffineProjector(const FeasibilityProblem& p)
    : n_(p.ambient_dim()), m_(p.num_constraints()) {
  a_.resize(static_cast<size_t>(m_) * n_);
  b_.resize(m_);
  for (int c = 0; c < m_; ++c) {
    const std::vector<double> row = p.constraint_row(c);
    std::copy(row.begin(), row.end(), a_.begin() + static_cast<size_t>(c) * n_);
    b_[c] = p.constraint_target(c);
  }
  if (m_ == 0) return;

  // G = A A^T, pinv = A^T G^+.
  std::vector<double> g(static_cast<size_t>(m_) * m_, 0.0);
  for (int i = 0; i < m_; ++i)
    for (int j = i; j < m_; ++j) {
      double s = 0.0;
      for (int k = 0; k < n_; ++k) s += a_[i * n_ + k] * a_[j * n_ + k];
      g[i * m_ + j] = s;
      g[j * m_ + i] = s;
    }
  const SymEig eig = sym_eig(g, m_);
  const double lmax = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
  const double cut = std::max(1e-12 * lmax, 1e-14);

  std::vector<double> gp(static_cast<size_t>(m_) * m_, 0.0);  // G^+
  for (int c = 0; c < m_; ++c) {
    if (eig.values[c] <= cut) continue;
    const double inv = 1.0 / eig.values[c];
    const double* u = eig.vectors.data() + static_cast<size_t>(c) * m_;
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j) gp[i * m_ + j] += inv * u[i] * u[j];
  }
  pinv_.assign(static_cast<size_t>(n_) * m_, 0.0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < m_; ++j) {
      double s = 0.0;
      for (int k = 0; k < m_; ++k) s += a_[k * n_ + i] * gp[k * m_ + j];
      pinv_[i * m_ + j] = s;
    }
}

std::vector<double> AffineProjector::project(const std::vector<double>& x) const {
  if (m_ == 0) return x;
  std::vector<double> r(m_);
  for (int c = 0; c < m_; ++c) {
    double s = -b_[c];
    const double* row = a_.data() + static_cast<size_t>(c) * n_;
    for (int k = 0; k < n_; ++k) s += row[k] * x[k];
    r[c] = s;
  }
  std::vector<double> out = x;
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    const double* row = pinv_.data() + static_cast<size_t>(i) * m_;
    for (int c = 0; c < m_; ++c) s += row[c] * r[c];
    out[i] -= s;
  }
  return out;
}

double AffineProjector::distance(const std::vector<double>& x) const {
  if (m_ == 0) return 0.0;
  const std::vector<double> px = project(x);
  double s = 0.0;
  for (int i = 0; i < n_; ++i) s += (x[i] - px[i]) * (x[i] - px[i]);
  return std::sqrt(s);
}

double AffineProjector::residual_inf(const std::vector<double>& x) const {
  double worst = 0.0;
  for (int c = 0; c < m_; ++c) {
    double s = -b_[c];
    const double* row = a_.data() + static_cast<size_t>(c) * n_;
    for (int k = 0; k < n_; ++k) s += row[k] * x[k];
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Dykstra iteration

namespace {

std::vector<double> project_cones(const FeasibilityProblem& p,
                                  const std::vector<double>& x) {
  std::vector<HermMatrix> blocks = p.unvectorize(x);
  for (size_t b = 0; b < blocks.size(); ++b) {
    const BlockSpec& spec = p.blocks()[b];
    if (spec.kind == BlockKind::free_herm) continue;
    const double delta = spec.strictness;
    if (delta == 0.0) {
      blocks[b] = numerics::psd_project(blocks[b]);
    } else {
      const HermMatrix shift = HermMatrix::identity(spec.dim) * delta;
      blocks[b] = numerics::psd_project(blocks[b] - shift) + shift;
    }
  }
  return p.vectorize(blocks);
}

double cone_violation(const FeasibilityProblem& p, const std::vector<double>& x) {
  const std::vector<HermMatrix> blocks = p.unvectorize(x);
  double worst = 0.0;
  for (size_t b = 0; b < blocks.size(); ++b) {
    const BlockSpec& spec = p.blocks()[b];
    if (spec.kind == BlockKind::free_herm) continue;
    worst = std::max(worst, spec.strictness - numerics::lambda_min(blocks[b]));
  }
  return std::max(0.0, worst);
}

double dist2(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

DykstraState::DykstraState(const FeasibilityProblem& p)
    : prob_(&p), proj_(std::make_shared<AffineProjector>(p)) {
  x_.assign(p.ambient_dim(), 0.0);
  corr_.assign(p.ambient_dim(), 0.0);
  y_ = x_;
  z_ = x_;
}

void DykstraState::set_start(const std::vector<HermMatrix>& point) {
  x_ = prob_->vectorize(point);
  corr_.assign(x_.size(), 0.0);
  y_ = x_;
  z_ = x_;
  iter_ = 0;
}

void DykstraState::step() {
  y_ = proj_->project(x_);
  std::vector<double> t(y_.size());
  for (size_t i = 0; i < t.size(); ++i) t[i] = y_[i] + corr_[i];
  z_ = project_cones(*prob_, t);
  for (size_t i = 0; i < t.size(); ++i) corr_[i] = t[i] - z_[i];
  x_ = z_;
  ++iter_;
}

std::vector<HermMatrix> DykstraState::affine_point() const {
  return prob_->unvectorize(y_);
}

std::vector<HermMatrix> DykstraState::cone_point() const {
  return prob_->unvectorize(z_);
}

double DykstraState::gap() const {
  return dist2(y_, project_cones(*prob_, y_));
}

double DykstraState::cone_violation_at_affine() const {
  return cone_violation(*prob_, y_);
}

double DykstraState::affine_residual_at_cone() const {
  return proj_->residual_inf(z_);
}

// ---------------------------------------------------------------------------

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::feasible: return "feasible";
    case SolveStatus::infeasible_evidence: return "infeasible-evidence";
    case SolveStatus::undecided: return "undecided";
  }
  return "?";
}

SolveReport solve_feasibility(const FeasibilityProblem& p, double tol, int max_iter) {
  DykstraState st(p);
  SolveReport rep;

  const int check_interval = 25;
  const int gap_interval = 250;
  double last_gaps[3] = {-1.0, -1.0, -1.0};
  double best_viol = std::numeric_limits<double>::infinity();

  for (int it = 1; it <= max_iter; ++it) {
    st.step();

    if (it % check_interval == 0 || it == max_iter || it <= 2) {
      const double viol = st.cone_violation_at_affine();
      best_viol = std::min(best_viol, viol);
      if (viol <= tol && st.proj_->residual_inf(st.y_) <= tol) {
        rep.status = SolveStatus::feasible;
        rep.point = st.affine_point();
        rep.residual = std::max(viol, st.proj_->residual_inf(st.y_));
        rep.iterations = st.iterations();
        return rep;
      }
      const double ares = st.affine_residual_at_cone();
      if (ares <= tol && cone_violation(p, st.z_) <= tol) {
        rep.status = SolveStatus::feasible;
        rep.point = st.cone_point();
        rep.residual = std::max(ares, cone_violation(p, st.z_));
        rep.iterations = st.iterations();
        return rep;
      }
    }

    if (it % gap_interval == 0) {
      const double g = st.gap();
      const bool stable =
          last_gaps[0] >= 0.0 &&
          std::abs(g - last_gaps[2]) <= 1e-3 * std::max(g, 1e-12) &&
          std::abs(last_gaps[2] - last_gaps[1]) <= 1e-3 * std::max(g, 1e-12);
      if (stable && g > 10.0 * tol) {
        rep.status = SolveStatus::infeasible_evidence;
        rep.gap_estimate = g;
        rep.residual = g;
        rep.iterations = st.iterations();
        return rep;
      }
      last_gaps[0] = last_gaps[1];
      last_gaps[1] = last_gaps[2];
      last_gaps[2] = g;
    }
  }

  rep.status = SolveStatus::undecided;
  rep.gap_estimate = st.gap();
  rep.residual = best_viol;
  rep.iterations = st.iterations();
  return rep;
}

double distance_to_affine(const FeasibilityProblem& p,
                          const std::vector<HermMatrix>& point) {
  const AffineProjector proj(p);
  return proj.distance(p.vectorize(point));
}

// ---------------------------------------------------------------------------
// Convex hull membership

namespace {

// min ||A w - b|| subject to w >= 0 (Lawson-Hanson active set; ties broken
// by lowest index for reproducibility).
std::vector<double> nnls(const std::vector<std::vector<double>>& cols,
                         const std::vector<double>& b) {
  const int m = static_cast<int>(cols.size());
  const int n = static_cast<int>(b.size());
  std::vector<double> w(m, 0.0);
  std::vector<bool> passive(m, false);

  auto residual = [&]() {
    std::vector<double> r = b;
    for (int j = 0; j < m; ++j)
      if (w[j] != 0.0)
        for (int i = 0; i < n; ++i) r[i] -= w[j] * cols[j][i];
    return r;
  };

  double scale = 0.0;
  for (const auto& col : cols)
    for (double v : col) scale = std::max(scale, std::abs(v));
  const double grad_tol = 1e-12 * std::max(scale, 1.0);

  // LS solve restricted to the passive set, via normal equations with a
  // pseudo-inverse fallback for rank deficiency.
  auto ls_passive = [&](const std::vector<int>& idx) {
    const int k = static_cast<int>(idx.size());
    std::vector<double> g(static_cast<size_t>(k) * k), rhs(k);
    for (int a = 0; a < k; ++a) {
      for (int c = a; c < k; ++c) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += cols[idx[a]][i] * cols[idx[c]][i];
        g[a * k + c] = s;
        g[c * k + a] = s;
      }
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += cols[idx[a]][i] * b[i];
      rhs[a] = s;
    }
    const SymEig eig = sym_eig(g, k);
    const double cut = std::max(1e-13 * std::abs(eig.values.back()), 1e-300);
    std::vector<double> u(k, 0.0);
    for (int c = 0; c < k; ++c) {
      if (eig.values[c] <= cut) continue;
      const double* v = eig.vectors.data() + static_cast<size_t>(c) * k;
      double proj = 0.0;
      for (int i = 0; i < k; ++i) proj += v[i] * rhs[i];
      proj /= eig.values[c];
      for (int i = 0; i < k; ++i) u[i] += proj * v[i];
    }
    return u;
  };

  for (int outer = 0; outer < 6 * m + 10; ++outer) {
    const std::vector<double> r = residual();
    int best = -1;
    double best_g = grad_tol;
    for (int j = 0; j < m; ++j) {
      if (passive[j]) continue;
      double gj = 0.0;
      for (int i = 0; i < n; ++i) gj += cols[j][i] * r[i];
      if (gj > best_g + 1e-15) {
        best_g = gj;
        best = j;
      }
    }
    if (best < 0) break;
    passive[best] = true;

    for (int inner = 0; inner < 4 * m + 10; ++inner) {
      std::vector<int> idx;
      for (int j = 0; j < m; ++j)
        if (passive[j]) idx.push_back(j);
      const std::vector<double> u = ls_passive(idx);
      bool all_pos = true;
      for (double v : u)
        if (v <= 0.0) all_pos = false;
      if (all_pos) {
        for (size_t a = 0; a < idx.size(); ++a) w[idx[a]] = u[a];
        break;
      }
      double alpha = 1.0;
      for (size_t a = 0; a < idx.size(); ++a) {
        if (u[a] <= 0.0) {
          const double denom = w[idx[a]] - u[a];
          if (denom > 0.0) alpha = std::min(alpha, w[idx[a]] / denom);
        }
      }
      for (size_t a = 0; a < idx.size(); ++a) {
        w[idx[a]] += alpha * (u[a] - w[idx[a]]);
        if (w[idx[a]] <= 1e-14) {
          w[idx[a]] = 0.0;
          passive[idx[a]] = false;
        }
      }
    }
  }
  return w;
}

// Euclidean projection onto the probability simplex.
std::vector<double> project_simplex(std::vector<double> v) {
  const int m = static_cast<int>(v.size());
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0, tau = 0.0;
  for (int k = 0; k < m; ++k) {
    css += u[k];
    const double t = (css - 1.0) / (k + 1);
    if (u[k] - t > 0.0) tau = t;
  }
  for (auto& x : v) x = std::max(0.0, x - tau);
  return v;
}

}  // namespace

HullResult hull_membership(const HullQuery& q) {
  const int m = static_cast<int>(q.vertices.size());
  if (m == 0) throw std::invalid_argument("hull_membership: empty vertex list");
  const int n = static_cast<int>(q.target.size());
  for (const auto& v : q.vertices)
    if (static_cast<int>(v.size()) != n)
      throw std::invalid_argument("hull_membership: dimension mismatch");

  double scale = 1.0;
  for (const auto& v : q.vertices)
    for (double x : v) scale = std::max(scale, std::abs(x));
  for (double x : q.target) scale = std::max(scale, std::abs(x));
  const double rho = 1e4 * scale;

  // Augmented NNLS system enforcing sum(w) ~ 1, then exact renormalization.
  std::vector<std::vector<double>> cols(m);
  std::vector<double> b(n + 1);
  for (int j = 0; j < m; ++j) {
    cols[j] = q.vertices[j];
    cols[j].push_back(rho);
  }
  for (int i = 0; i < n; ++i) b[i] = q.target[i];
  b[n] = rho;

  std::vector<double> w = nnls(cols, b);
  double sum = std::accumulate(w.begin(), w.end(), 0.0);
  if (sum <= 1e-12) {
    w.assign(m, 0.0);
    w[0] = 1.0;
    sum = 1.0;
  }
  for (auto& x : w) x /= sum;

  // Projected-gradient polish of min ||V w - t||^2 over the simplex.
  double lip = 0.0;
  {
    std::vector<double> g(static_cast<size_t>(m) * m);
    for (int a = 0; a < m; ++a)
      for (int c = a; c < m; ++c) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += q.vertices[a][i] * q.vertices[c][i];
        g[a * m + c] = s;
        g[c * m + a] = s;
      }
    const SymEig eig = sym_eig(g, m);
    lip = std::max(eig.values.back(), 1e-12);
  }
  auto apply_v = [&](const std::vector<double>& ww) {
    std::vector<double> out(n, 0.0);
    for (int j = 0; j < m; ++j)
      if (ww[j] != 0.0)
        for (int i = 0; i < n; ++i) out[i] += ww[j] * q.vertices[j][i];
    return out;
  };
  for (int it = 0; it < 400; ++it) {
    const std::vector<double> vw = apply_v(w);
    std::vector<double> grad(m, 0.0);
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < n; ++i)
        grad[j] += q.vertices[j][i] * (vw[i] - q.target[i]);
    std::vector<double> next(m);
    for (int j = 0; j < m; ++j) next[j] = w[j] - grad[j] / lip;
    next = project_simplex(next);
    double move = 0.0;
    for (int j = 0; j < m; ++j) move = std::max(move, std::abs(next[j] - w[j]));
    w = next;
    if (move < 1e-16 * std::max(1.0, scale)) break;
  }

  const std::vector<double> vw = apply_v(w);
  std::vector<double> r(n);
  double dist = 0.0;
  for (int i = 0; i < n; ++i) {
    r[i] = q.target[i] - vw[i];
    dist += r[i] * r[i];
  }
  dist = std::sqrt(dist);

  HullResult out;
  if (dist <= q.tol) {
    out.inside = true;
    out.weights = w;
    return out;
  }

  out.inside = false;
  out.separator.resize(n);
  for (int i = 0; i < n; ++i) out.separator[i] = r[i] / dist;
  double vmax = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < m; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += out.separator[i] * q.vertices[j][i];
    vmax = std::max(vmax, s);
  }
  double tval = 0.0;
  for (int i = 0; i < n; ++i) tval += out.separator[i] * q.target[i];
  out.gap = tval - vmax;
  return out;
}

}  // namespace oscone::convex
