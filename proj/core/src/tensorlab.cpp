#include "oscone/tensorlab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "oscone/rng.hpp"

namespace oscone::tensorlab {

using numerics::Complex;
using numerics::GeneralMatrix;
using numerics::HermMatrix;

namespace {

using Table = std::array<std::array<double, 4>, 4>;

// Balance functionals of the V (x) V subspace: row sums q_{i1}+q_{i2} must
// equal q_{i3}+q_{i4}, and likewise for columns. Rank 7 out of 8.
constexpr double kSign[4] = {1.0, 1.0, -1.0, -1.0};

double row_violation(const Table& q, int i) {
  return q[i][0] + q[i][1] - q[i][2] - q[i][3];
}
double col_violation(const Table& q, int j) {
  return q[0][j] + q[1][j] - q[2][j] - q[3][j];
}

struct BalanceSystem {
  std::array<std::array<double, 16>, 8> rows;  // constraint rows in R^16
  std::array<std::array<double, 8>, 8> gplus;  // pseudo-inverse of the Gram
};

// The rank-7 balance constraint system with its Gram pseudo-inverse. The
// repair is applied in residual form, q - A^T G^+ (A q), so exactly
// balanced tables pass through unchanged.
const BalanceSystem& balance_system() {
  static const BalanceSystem sys = [] {
    BalanceSystem s{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) s.rows[i][4 * i + j] = kSign[j];
    for (int j = 0; j < 4; ++j)
      for (int i = 0; i < 4; ++i) s.rows[4 + j][4 * i + j] = kSign[i];
    const int m = 8;
    HermMatrix g(m);
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b) {
        double acc = 0.0;
        for (int k = 0; k < 16; ++k) acc += s.rows[a][k] * s.rows[b][k];
        g.set(a, b, acc);
      }
    const numerics::Spectrum sp = numerics::eigh(g);
    const double cut = 1e-9 * sp.eigenvalues.back();
    for (int c = 0; c < m; ++c) {
      if (sp.eigenvalues[c] <= cut) continue;
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          s.gplus[a][b] += sp.eigenvectors(a, c).real() *
                           sp.eigenvectors(b, c).real() / sp.eigenvalues[c];
    }
    return s;
  }();
  return sys;
}

}  // namespace

double BoxMatrix::balance_violation(const Table& q) {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(row_violation(q, i)));
  for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(col_violation(q, j)));
  return worst;
}

Table BoxMatrix::project_to_subspace(const Table& q) {
  const BalanceSystem& sys = balance_system();
  std::array<double, 8> res{};
  for (int a = 0; a < 8; ++a)
    for (int k = 0; k < 16; ++k) res[a] += sys.rows[a][k] * q[k / 4][k % 4];
  std::array<double, 8> mult{};
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) mult[a] += sys.gplus[a][b] * res[b];
  Table out = q;
  for (int k = 0; k < 16; ++k) {
    double corr = 0.0;
    for (int a = 0; a < 8; ++a) corr += sys.rows[a][k] * mult[a];
    out[k / 4][k % 4] -= corr;
  }
  return out;
}

BoxMatrix BoxMatrix::from_entries(const Table& q, double tol) {
  double scale = 1.0;
  for (const auto& row : q)
    for (double v : row) scale = std::max(scale, std::abs(v));
  if (balance_violation(q) > tol * scale)
    throw std::invalid_argument(
        "BoxMatrix: row/column balance violated beyond tolerance");
  BoxMatrix b;
  b.q_ = project_to_subspace(q);
  return b;
}

BoxMatrix BoxMatrix::scaled(double t) const {
  Table q = q_;
  for (auto& row : q)
    for (double& v : row) v *= t;
  BoxMatrix b;
  b.q_ = q;
  return b;
}

double BoxMatrix::frobenius_distance(const BoxMatrix& o) const {
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s += (q_[i][j] - o.q_[i][j]) * (q_[i][j] - o.q_[i][j]);
  return std::sqrt(s);
}

BoxMatrix pr_matrix() {
  return BoxMatrix::from_entries(
      {{{1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 0, 1}, {0, 1, 1, 0}}});
}

BoxMatrix displayed_q_matrix() {
  return BoxMatrix::from_entries(
      {{{1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}}});
}

BoxMatrix uniform_matrix() {
  Table q;
  for (auto& row : q) row.fill(0.25);
  return BoxMatrix::from_entries(q);
}

bool min_cone_member(const BoxMatrix& b, double tol) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (b(i, j) < -tol) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Square-root Bell inequality

namespace {

SqrtBellReport sqrt_bell_from_table(const Table& q) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (q[i][j] < -1e-12)
        throw std::domain_error("sqrt_bell_value: negative entries");
  Table sq;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) sq[i][j] = std::sqrt(std::max(0.0, q[i][j]));

  SqrtBellReport rep;
  for (int d = 0; d < 2; ++d) {
    double s = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) s += q[2 * d + i][2 * d + j];
    rep.lhs[d] = s;
  }

  rep.rhs = std::numeric_limits<double>::infinity();
  rep.rhs_outer_min = std::numeric_limits<double>::infinity();
  for (int ai = 0; ai < 2; ++ai)
    for (int ci = 0; ci < 2; ++ci) {
      const int a = 2 * ai, c = 2 * ci;
      double inner_sum = 0.0;
      double outer_b[2] = {0.0, 0.0};
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          double per_b[2];
          for (int bi = 0; bi < 2; ++bi) {
            const int b = 2 * bi;
            per_b[bi] = sq[b][a + j] * sq[b][c + k] + sq[b + 1][a + j] * sq[b + 1][c + k];
            outer_b[bi] += per_b[bi];
          }
          const double s = std::min(per_b[0], per_b[1]);
          rep.s_table[ai][ci][j][k] = s;
          inner_sum += s;
        }
      rep.rhs = std::min(rep.rhs, inner_sum);
      rep.rhs_outer_min =
          std::min(rep.rhs_outer_min, std::min(outer_b[0], outer_b[1]));
    }
  return rep;
}

}  // namespace

SqrtBellReport sqrt_bell_value(const BoxMatrix& b) {
  return sqrt_bell_from_table(b.entries());
}

// ---------------------------------------------------------------------------
// Max-cone witnesses

FactorWitness FactorWitness::make(std::array<HermMatrix, 4> x,
                                  std::array<HermMatrix, 4> y, double tol) {
  const int p = x[0].dim();
  for (const auto& m : x)
    if (m.dim() != p) throw std::invalid_argument("FactorWitness: X dims differ");
  for (const auto& m : y)
    if (m.dim() != p) throw std::invalid_argument("FactorWitness: Y dims differ");
  for (const auto& m : x)
    if (!numerics::is_psd(m, tol))
      throw std::invalid_argument("FactorWitness: X factor not PSD");
  for (const auto& m : y)
    if (!numerics::is_psd(m, tol))
      throw std::invalid_argument("FactorWitness: Y factor not PSD");
  const HermMatrix id = HermMatrix::identity(p);
  if ((x[0] + x[1] - x[2] - x[3]).frobenius_norm() > tol * 4.0 * (1.0 + x[0].frobenius_norm() + x[2].frobenius_norm()))
    throw std::invalid_argument("FactorWitness: X1+X2 != X3+X4");
  if ((y[0] + y[1] - id).frobenius_norm() > tol * 4.0 ||
      (y[2] + y[3] - id).frobenius_norm() > tol * 4.0)
    throw std::invalid_argument("FactorWitness: Y1+Y2 = Y3+Y4 = I violated");
  return FactorWitness{p, std::move(x), std::move(y)};
}

namespace {

double pair_trace(const HermMatrix& a, const HermMatrix& b) {
  // Tr(ab) for Hermitian a, b is real.
  double s = 0.0;
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += (a(i, j) * b(j, i)).real();
  return s;
}

Table witness_table(const FactorWitness& w) {
  Table q;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) q[i][j] = pair_trace(w.x[i], w.y[j]);
  return q;
}

}  // namespace

BoxMatrix max_cone_construct(const FactorWitness& w) {
  return BoxMatrix::from_entries(witness_table(w), 1e-7);
}

bool trace_inequality_check(const FactorWitness& w, double tol) {
  Table q = witness_table(w);
  for (auto& row : q)
    for (double& v : row) v = std::max(0.0, v);
  const SqrtBellReport rep = sqrt_bell_from_table(q);
  const double lhs = w.x[0].trace() + w.x[1].trace();
  return lhs <= rep.rhs + tol;
}

// ---------------------------------------------------------------------------
// Witness search

namespace {

struct HalfSolveResult {
  std::array<HermMatrix, 4> point;
  bool feasible = false;
  double residual = 0.0;
};

// One side of the seesaw: run the projection iteration with a fixed budget,
// exiting early on feasibility; otherwise harvest the cone-side iterate as
// the best PSD-true candidate.
HalfSolveResult half_solve(const convex::FeasibilityProblem& prob, double tol,
                           int max_iter) {
  convex::DykstraState st(prob);
  HalfSolveResult out;
  for (int i = 1; i <= max_iter; ++i) {
    st.step();
    if (i % 25 != 0 && i != max_iter) continue;
    if (st.cone_violation_at_affine() <= tol) {
      const std::vector<HermMatrix> y = st.affine_point();
      for (int k = 0; k < 4; ++k) out.point[k] = y[k];
      out.feasible = true;
      out.residual = st.cone_violation_at_affine();
      return out;
    }
    if (st.affine_residual_at_cone() <= tol) {
      const std::vector<HermMatrix> z = st.cone_point();
      for (int k = 0; k < 4; ++k) out.point[k] = z[k];
      out.feasible = true;
      out.residual = st.affine_residual_at_cone();
      return out;
    }
  }
  const std::vector<HermMatrix> z = st.cone_point();
  for (int k = 0; k < 4; ++k) out.point[k] = z[k];
  out.residual = st.affine_residual_at_cone();
  return out;
}

convex::FeasibilityProblem x_side_problem(const Table& q,
                                          const std::array<HermMatrix, 4>& y,
                                          int p) {
  convex::FeasibilityProblem prob;
  int xb[4];
  for (int i = 0; i < 4; ++i)
    xb[i] = prob.add_psd_block("X" + std::to_string(i + 1), p, 0.0);
  prob.add_subblock_constraint(
      {{xb[0], 0, 0, 1.0}, {xb[1], 0, 0, 1.0}, {xb[2], 0, 0, -1.0}, {xb[3], 0, 0, -1.0}},
      GeneralMatrix(p, p));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      prob.add_functional_constraint({{xb[i], y[j]}}, q[i][j]);
  return prob;
}

convex::FeasibilityProblem y_side_problem(const Table& q,
                                          const std::array<HermMatrix, 4>& x,
                                          int p) {
  convex::FeasibilityProblem prob;
  int yb[4];
  for (int j = 0; j < 4; ++j)
    yb[j] = prob.add_psd_block("Y" + std::to_string(j + 1), p, 0.0);
  const GeneralMatrix id = GeneralMatrix::identity(p);
  prob.add_subblock_constraint({{yb[0], 0, 0, 1.0}, {yb[1], 0, 0, 1.0}}, id);
  prob.add_subblock_constraint({{yb[2], 0, 0, 1.0}, {yb[3], 0, 0, 1.0}}, id);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      prob.add_functional_constraint({{yb[j], x[i]}}, q[i][j]);
  return prob;
}

double table_error(const Table& a, const Table& b) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s += (a[i][j] - b[i][j]) * (a[i][j] - b[i][j]);
  return std::sqrt(s);
}

Table pair_table(const std::array<HermMatrix, 4>& x,
                 const std::array<HermMatrix, 4>& y) {
  Table q;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) q[i][j] = pair_trace(x[i], y[j]);
  return q;
}

// Projects a near-witness side onto its exact invariant set (PSD blocks and
// the sum conditions), leaving the trace table almost unchanged.
bool project_to_invariants(std::array<HermMatrix, 4>& side, int p, bool y_side) {
  convex::FeasibilityProblem prob;
  int blk[4];
  for (int i = 0; i < 4; ++i) blk[i] = prob.add_psd_block("B", p, 0.0);
  if (y_side) {
    const GeneralMatrix id = GeneralMatrix::identity(p);
    prob.add_subblock_constraint({{blk[0], 0, 0, 1.0}, {blk[1], 0, 0, 1.0}}, id);
    prob.add_subblock_constraint({{blk[2], 0, 0, 1.0}, {blk[3], 0, 0, 1.0}}, id);
  } else {
    prob.add_subblock_constraint({{blk[0], 0, 0, 1.0},
                                  {blk[1], 0, 0, 1.0},
                                  {blk[2], 0, 0, -1.0},
                                  {blk[3], 0, 0, -1.0}},
                                 GeneralMatrix(p, p));
  }
  convex::DykstraState st(prob);
  st.set_start({side[0], side[1], side[2], side[3]});
  for (int i = 0; i < 4000; ++i) {
    st.step();
    if (i % 20 == 19 && st.cone_violation_at_affine() <= 1e-12) break;
  }
  if (st.cone_violation_at_affine() > 1e-10) return false;
  const std::vector<HermMatrix> out = st.affine_point();
  for (int i = 0; i < 4; ++i) side[i] = out[i];
  return true;
}

}  // namespace

SearchResult max_cone_search(const BoxMatrix& b, int p, int restarts,
                             uint64_t seed) {
  const Table& q = b.entries();
  SearchResult result;
  Rng rng(seed);
  const HermMatrix id = HermMatrix::identity(p);

  for (int r = 0; r < restarts; ++r) {
    result.restarts_used = r + 1;
    std::array<HermMatrix, 4> y;
    if (r == 0) {
      // Structured start: half-rank diagonal projectors.
      std::vector<double> diag(p, 0.0);
      for (int i = 0; i < (p + 1) / 2; ++i) diag[i] = 1.0;
      const HermMatrix e = HermMatrix::diagonal(diag);
      y = {e, id - e, e, id - e};
    } else if (r % 2 == 1) {
      // Rank-1 projector starts reach extremal (projective) witnesses.
      auto rank1 = [&] {
        std::vector<Complex> v(p);
        double norm = 0.0;
        for (auto& c : v) {
          c = rng.cnormal();
          norm += std::norm(c);
        }
        norm = std::sqrt(norm);
        HermMatrix proj(p);
        for (int i = 0; i < p; ++i)
          for (int j = i; j < p; ++j)
            proj.set(i, j, v[i] * std::conj(v[j]) / (norm * norm));
        return proj;
      };
      const HermMatrix y1 = rank1();
      const HermMatrix y3 = rank1();
      y = {y1, id - y1, y3, id - y3};
    } else {
      const HermMatrix y1 = random_psd_contraction(rng, p);
      const HermMatrix y3 = random_psd_contraction(rng, p);
      y = {y1, id - y1, y3, id - y3};
    }

    std::array<HermMatrix, 4> x;
    double best_err = std::numeric_limits<double>::infinity();
    int stall = 0;
    for (int round = 0; round < 60; ++round) {
      // Small budget while far from a fit; more iterations once promising.
      const int budget = (best_err < 5e-2) ? 800 : 300;
      const HalfSolveResult xr = half_solve(x_side_problem(q, y, p), 1e-10, budget);
      x = xr.point;
      const HalfSolveResult yr = half_solve(y_side_problem(q, x, p), 1e-10, budget);
      y = yr.point;
      const double err = table_error(pair_table(x, y), q);
      // Keep going while the mismatch shrinks geometrically.
      if (err < 0.93 * best_err - 1e-12) {
        stall = 0;
      } else if (++stall >= 3) {
        best_err = std::min(best_err, err);
        break;
      }
      best_err = std::min(best_err, err);
      if (err < 2e-7) break;
    }
    if (best_err > 5e-7) continue;

    // Finalize: enforce the witness invariants exactly; the projection
    // perturbs the trace table by at most the same order as the fit error.
    if (!project_to_invariants(x, p, false)) continue;
    if (!project_to_invariants(y, p, true)) continue;
    const double err = table_error(pair_table(x, y), q);
    if (err > 1e-6) continue;
    try {
      FactorWitness w = FactorWitness::make(x, y, 1e-9);
      result.found = true;
      result.reconstruction_error = err;
      result.witness = std::move(w);
      return result;
    } catch (const std::invalid_argument&) {
      continue;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Trigonometric polynomials and the torus scan

MatTrigPoly::MatTrigPoly(int vars, int dim) : vars_(vars), dim_(dim) {
  if (vars != 1 && vars != 2)
    throw std::invalid_argument("MatTrigPoly: 1 or 2 variables supported");
  if (dim <= 0) throw std::invalid_argument("MatTrigPoly: bad dimension");
}

void MatTrigPoly::set_coeff(int kz, int kw, const GeneralMatrix& c) {
  if (std::abs(kz) > 1 || std::abs(kw) > 1)
    throw std::invalid_argument("MatTrigPoly: degree must be <= 1");
  if (vars_ == 1 && kw != 0)
    throw std::invalid_argument("MatTrigPoly: second exponent in 1-variable poly");
  if (c.rows() != dim_ || c.cols() != dim_)
    throw std::invalid_argument("MatTrigPoly: coefficient dimension mismatch");
  coeffs_[{kz, kw}] = c;
  if (kz != 0 || kw != 0) coeffs_[{-kz, -kw}] = c.adjoint();
}

HermMatrix MatTrigPoly::eval(Complex z, Complex w) const {
  GeneralMatrix acc(dim_, dim_);
  for (const auto& [k, c] : coeffs_) {
    Complex factor = 1.0;
    if (k.first == 1) factor *= z;
    if (k.first == -1) factor *= std::conj(z);
    if (k.second == 1) factor *= w;
    if (k.second == -1) factor *= std::conj(w);
    acc = acc + c * factor;
  }
  return HermMatrix::from_general(acc, 1e-9);
}

MatTrigPoly separation_element() {
  MatTrigPoly h(2, 2);
  h.set_coeff(0, 0, GeneralMatrix::from_rows({{3.0, 0.0}, {0.0, 3.0}}));
  h.set_coeff(1, 1, GeneralMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}));
  h.set_coeff(-1, 1, GeneralMatrix::from_rows({{0.0, 2.0}, {0.0, 0.0}}));
  return h;
}

TorusScanResult torus_min_eig(const MatTrigPoly& f, int grid_n) {
  if (grid_n <= 0) throw std::invalid_argument("torus_min_eig: bad grid size");
  TorusScanResult out;
  out.min_value = std::numeric_limits<double>::infinity();
  const int nw = (f.vars() == 2) ? grid_n : 1;
  for (int a = 0; a < grid_n; ++a) {
    const Complex z = std::polar(1.0, 2.0 * M_PI * a / grid_n);
    for (int bidx = 0; bidx < nw; ++bidx) {
      const Complex w =
          (f.vars() == 2) ? std::polar(1.0, 2.0 * M_PI * bidx / grid_n) : Complex(1.0);
      const double lmin = numerics::lambda_min(f.eval(z, w));
      if (lmin < out.min_value) {
        out.min_value = lmin;
        out.argmin_z = z;
        out.argmin_w = w;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// S_1 max split and the separation certificates

convex::FeasibilityProblem s1_max_split_problem(const HermMatrix& t0,
                                                const GeneralMatrix& t1,
                                                double delta) {
  const int d = t0.dim();
  if (t1.rows() != d || t1.cols() != d)
    throw std::invalid_argument("s1_max_split: shapes disagree");
  convex::FeasibilityProblem p;
  const int m = p.add_psd_block("M", 2 * d, delta);
  p.add_subblock_constraint({{m, 0, 0, 1.0}, {m, d, d, 1.0}}, t0.to_general());
  p.add_subblock_constraint({{m, 0, d, 1.0}}, t1);
  return p;
}

convex::SolveReport s1_max_split(const HermMatrix& t0, const GeneralMatrix& t1,
                                 double delta, double tol, int max_iter) {
  return convex::solve_feasibility(s1_max_split_problem(t0, t1, delta), tol,
                                   max_iter);
}

convex::FeasibilityProblem ando_split_problem(const GeneralMatrix& t,
                                              double delta) {
  if (!t.is_square())
    throw std::invalid_argument("ando_split_problem: matrix not square");
  return s1_max_split_problem(HermMatrix::identity(t.rows()), t, delta);
}

HermMatrix sone_averaged_matrix(double a11, double a22) {
  HermMatrix b(4);
  b.set(0, 0, a11);
  b.set(1, 1, a22);
  b.set(2, 2, 3.0 - a11);
  b.set(3, 3, 3.0 - a22);
  b.set(0, 2, 1.0);
  b.set(1, 2, 2.0);
  b.set(1, 3, -1.0);
  return b;
}

SoneObstructionReport sone_obstruction(int grid_n, double margin) {
  SoneObstructionReport rep;
  // Vertex of -x^2 + 7x - 13 in exact integer arithmetic:
  // max = (4ac - b^2) / (4a), argmax = -b / (2a) with a=-1, b=7, c=-13.
  rep.parabola_max = static_cast<double>(4 * (-1) * (-13) - 7 * 7) /
                     static_cast<double>(4 * (-1));
  rep.parabola_argmax = static_cast<double>(-7) / static_cast<double>(2 * (-1));
  rep.grid_n = grid_n;
  rep.grid_psd_hits = 0;
  rep.worst_lambda_min = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_n; ++i)
    for (int j = 0; j < grid_n; ++j) {
      const double a11 =
          margin + (3.0 - 2.0 * margin) * i / std::max(1, grid_n - 1);
      const double a22 =
          margin + (3.0 - 2.0 * margin) * j / std::max(1, grid_n - 1);
      const double lmin = numerics::lambda_min(sone_averaged_matrix(a11, a22));
      rep.worst_lambda_min = std::max(rep.worst_lambda_min, lmin);
      if (lmin >= -1e-12) ++rep.grid_psd_hits;
    }
  rep.certified = rep.parabola_max < 0.0 && rep.grid_psd_hits == 0;
  return rep;
}

std::vector<Complex> roots_of_unity(int n) {
  std::vector<Complex> pts;
  pts.reserve(n);
  for (int k = 0; k < n; ++k) pts.push_back(std::polar(1.0, 2.0 * M_PI * k / n));
  return pts;
}

convex::FeasibilityProblem sone_relaxation(const std::vector<Complex>& points,
                                           double delta) {
  if (points.empty())
    throw std::invalid_argument("sone_relaxation: need at least one point");
  for (const Complex& w : points)
    if (std::abs(std::abs(w) - 1.0) > 1e-9)
      throw std::invalid_argument("sone_relaxation: points must be unimodular");

  convex::FeasibilityProblem p;
  // Degree-1 unknown A(w) = A0 + A1 w + A1^* conj(w) with A1 = H + iK.
  const int a0 = p.add_free_block("A0", 2);
  const int h = p.add_free_block("A1_herm", 2);
  const int k = p.add_free_block("A1_skew", 2);

  const GeneralMatrix zero22(2, 2);
  GeneralMatrix three_i(2, 2);
  three_i(0, 0) = 3.0;
  three_i(1, 1) = 3.0;

  for (size_t idx = 0; idx < points.size(); ++idx) {
    const Complex w = points[idx];
    const int xk = p.add_psd_block("X" + std::to_string(idx + 1), 4, delta);
    // Upper-left block carries the degree-1 unknown:
    // X[0:2,0:2] = A0 + 2 Re(w) H - 2 Im(w) K.
    p.add_subblock_constraint({{xk, 0, 0, 1.0},
                               {a0, 0, 0, -1.0},
                               {h, 0, 0, -2.0 * w.real()},
                               {k, 0, 0, 2.0 * w.imag()}},
                              zero22);
    // Diagonal blocks sum to the constant unit part 3I.
    p.add_subblock_constraint({{xk, 0, 0, 1.0}, {xk, 2, 2, 1.0}}, three_i);
    // Fixed off-diagonal block C(w) = [[w, 0],[2 conj(w), -w]].
    GeneralMatrix cw(2, 2);
    cw(0, 0) = w;
    cw(1, 0) = 2.0 * std::conj(w);
    cw(1, 1) = -w;
    p.add_subblock_constraint({{xk, 0, 2, 1.0}}, cw);
  }
  return p;
}

}  // namespace oscone::tensorlab
