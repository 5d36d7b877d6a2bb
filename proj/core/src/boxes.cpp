#include "oscone/boxes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "oscone/convex.hpp"
#include "oscone/rng.hpp"

namespace oscone::boxes {

using numerics::Complex;
using numerics::GeneralMatrix;
using numerics::HermMatrix;
using tensorlab::BoxMatrix;
using tensorlab::FactorWitness;

namespace {

void collect_issues(const double (&p)[2][2][2][2],
                    std::vector<ValidationIssue>& issues) {
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
          if (p[a][b][x][y] < -1e-12)
            issues.push_back({"nonnegative", {a, b, x, y}, -p[a][b][x][y]});
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      double s = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) s += p[a][b][x][y];
      if (std::abs(s - 1.0) > 1e-10)
        issues.push_back({"normalization", {-1, -1, x, y}, std::abs(s - 1.0)});
    }
  // Alice marginal independent of y; Bob marginal independent of x.
  for (int a = 0; a < 2; ++a)
    for (int x = 0; x < 2; ++x) {
      const double m0 = p[a][0][x][0] + p[a][1][x][0];
      const double m1 = p[a][0][x][1] + p[a][1][x][1];
      if (std::abs(m0 - m1) > 1e-10)
        issues.push_back({"nonsignaling", {a, -1, x, -1}, std::abs(m0 - m1)});
    }
  for (int b = 0; b < 2; ++b)
    for (int y = 0; y < 2; ++y) {
      const double m0 = p[0][b][0][y] + p[1][b][0][y];
      const double m1 = p[0][b][1][y] + p[1][b][1][y];
      if (std::abs(m0 - m1) > 1e-10)
        issues.push_back({"nonsignaling", {-1, b, -1, y}, std::abs(m0 - m1)});
    }
}

}  // namespace

Box Box::from_table(const double (&p)[2][2][2][2]) {
  std::vector<ValidationIssue> issues;
  auto box = try_from_table(p, &issues);
  if (!box) {
    std::string msg = "Box: invalid table:";
    for (const auto& issue : issues) {
      msg += " " + issue.invariant + "(";
      for (int v : issue.index) msg += std::to_string(v) + ",";
      msg += " by " + std::to_string(issue.violation) + ")";
    }
    throw std::invalid_argument(msg);
  }
  return *box;
}

std::optional<Box> Box::try_from_table(const double (&p)[2][2][2][2],
                                       std::vector<ValidationIssue>* issues) {
  std::vector<ValidationIssue> local;
  collect_issues(p, local);
  if (issues) *issues = local;
  if (!local.empty()) return std::nullopt;
  Box b;
  for (int a = 0; a < 2; ++a)
    for (int bb = 0; bb < 2; ++bb)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) b.p_[a][bb][x][y] = std::max(0.0, p[a][bb][x][y]);
  return b;
}

Box Box::uniform() {
  double p[2][2][2][2];
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) p[a][b][x][y] = 0.25;
  return from_table(p);
}

Box Box::pr() {
  double p[2][2][2][2];
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
          p[a][b][x][y] = ((a ^ b) == (x & y)) ? 0.5 : 0.0;
  return from_table(p);
}

Box Box::deterministic(int f0, int f1, int g0, int g1) {
  const int f[2] = {f0, f1};
  const int g[2] = {g0, g1};
  double p[2][2][2][2];
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
          p[a][b][x][y] = (a == f[x] && b == g[y]) ? 1.0 : 0.0;
  return from_table(p);
}

const std::array<Box, 16>& deterministic_boxes() {
  static const std::array<Box, 16> all = [] {
    std::array<Box, 16> out{
        Box::deterministic(0, 0, 0, 0), Box::deterministic(0, 0, 0, 1),
        Box::deterministic(0, 0, 1, 0), Box::deterministic(0, 0, 1, 1),
        Box::deterministic(0, 1, 0, 0), Box::deterministic(0, 1, 0, 1),
        Box::deterministic(0, 1, 1, 0), Box::deterministic(0, 1, 1, 1),
        Box::deterministic(1, 0, 0, 0), Box::deterministic(1, 0, 0, 1),
        Box::deterministic(1, 0, 1, 0), Box::deterministic(1, 0, 1, 1),
        Box::deterministic(1, 1, 0, 0), Box::deterministic(1, 1, 0, 1),
        Box::deterministic(1, 1, 1, 0), Box::deterministic(1, 1, 1, 1)};
    return out;
  }();
  return all;
}

BoxMatrix box_to_matrix(const Box& b) {
  std::array<std::array<double, 4>, 4> q;
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a)
      for (int y = 0; y < 2; ++y)
        for (int bb = 0; bb < 2; ++bb) q[2 * x + a][2 * y + bb] = b(a, bb, x, y);
  return BoxMatrix::from_entries(q, 1e-9);
}

Box matrix_to_box(const BoxMatrix& m, double tol) {
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      const double s = m(2 * x, 2 * y) + m(2 * x, 2 * y + 1) +
                       m(2 * x + 1, 2 * y) + m(2 * x + 1, 2 * y + 1);
      if (std::abs(s - 1.0) > tol)
        throw std::invalid_argument(
            "matrix_to_box: block (" + std::to_string(x) + "," +
            std::to_string(y) + ") does not sum to 1");
    }
  double p[2][2][2][2];
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a)
      for (int y = 0; y < 2; ++y)
        for (int b = 0; b < 2; ++b) p[a][b][x][y] = m(2 * x + a, 2 * y + b);
  return Box::from_table(p);
}

NonsignalingCheck is_nonsignaling(const std::array<std::array<double, 4>, 4>& q,
                                  double tol) {
  NonsignalingCheck out;
  const double viol = BoxMatrix::balance_violation(q);
  out.nonsignaling = viol <= tol;
  if (viol <= 10.0 * tol) {
    out.repaired = true;
    out.repaired_matrix = BoxMatrix::project_to_subspace(q);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Local polytope

namespace {

std::vector<double> box_vector(const Box& b) {
  std::vector<double> v;
  v.reserve(16);
  for (int a = 0; a < 2; ++a)
    for (int bb = 0; bb < 2; ++bb)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) v.push_back(b(a, bb, x, y));
  return v;
}

}  // namespace

Box LocalModel::to_box() const {
  double p[2][2][2][2] = {};
  int k = 0;
  for (int f0 = 0; f0 < 2; ++f0)
    for (int f1 = 0; f1 < 2; ++f1)
      for (int g0 = 0; g0 < 2; ++g0)
        for (int g1 = 0; g1 < 2; ++g1) {
          const double w = weights[k++];
          if (w == 0.0) continue;
          const int f[2] = {f0, f1};
          const int g[2] = {g0, g1};
          for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) p[f[x]][g[y]][x][y] += w;
        }
  return Box::from_table(p);
}

LocalResult local_membership(const Box& b, double tol) {
  convex::HullQuery q;
  q.tol = tol;
  q.target = box_vector(b);
  for (const Box& v : deterministic_boxes()) q.vertices.push_back(box_vector(v));
  const convex::HullResult hull = convex::hull_membership(q);

  LocalResult out;
  out.local = hull.inside;
  if (hull.inside) {
    for (int k = 0; k < 16; ++k) out.model.weights[k] = hull.weights[k];
    return out;
  }
  for (int k = 0; k < 16; ++k) out.bell_functional[k] = hull.separator[k];
  out.gap_unit = hull.gap;
  double vmax = -std::numeric_limits<double>::infinity();
  for (const auto& v : q.vertices) {
    double s = 0.0;
    for (int k = 0; k < 16; ++k) s += hull.separator[k] * v[k];
    vmax = std::max(vmax, s);
  }
  out.local_max = vmax;
  // Rescale so the local maximum of the functional is 2 (CHSH convention);
  // possible whenever the local max is bounded away from zero.
  if (std::abs(vmax) > 1e-9) {
    const double scale = 2.0 / vmax;
    out.gap_localmax2 = hull.gap * std::abs(scale);
  } else {
    out.gap_localmax2 = hull.gap;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Quantum strategies

QuantumStrategy QuantumStrategy::make(
    int dim, HermMatrix rho, std::array<std::array<HermMatrix, 2>, 2> a,
    std::array<std::array<HermMatrix, 2>, 2> b, double tol) {
  if (dim < 1) throw std::invalid_argument("QuantumStrategy: dim must be >= 1");
  if (rho.dim() != dim * dim)
    throw std::invalid_argument("QuantumStrategy: rho must act on dim^2");
  if (!numerics::is_psd(rho, tol))
    throw std::invalid_argument("QuantumStrategy: rho not PSD");
  if (std::abs(rho.trace() - 1.0) > tol)
    throw std::invalid_argument("QuantumStrategy: rho trace differs from 1");
  const HermMatrix id = HermMatrix::identity(dim);
  for (int x = 0; x < 2; ++x) {
    for (int o = 0; o < 2; ++o) {
      if (a[x][o].dim() != dim || b[x][o].dim() != dim)
        throw std::invalid_argument("QuantumStrategy: measurement dim mismatch");
      if (!numerics::is_psd(a[x][o], tol) || !numerics::is_psd(b[x][o], tol))
        throw std::invalid_argument("QuantumStrategy: measurement not PSD");
    }
    if ((a[x][0] + a[x][1] - id).frobenius_norm() > tol * 10.0 ||
        (b[x][0] + b[x][1] - id).frobenius_norm() > tol * 10.0)
      throw std::invalid_argument("QuantumStrategy: POVM completeness violated");
  }
  QuantumStrategy s;
  s.dim = dim;
  s.rho = std::move(rho);
  s.a = std::move(a);
  s.b = std::move(b);
  return s;
}

namespace {

double born_probability(const HermMatrix& rho, const HermMatrix& a,
                        const HermMatrix& b) {
  // Tr(rho (a (x) b)) without forming the Kronecker product.
  const int d = a.dim();
  double s = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          s += (rho(i * d + k, j * d + l) * a(j, i) * b(l, k)).real();
  return s;
}

}  // namespace

Box strategy_to_box(const QuantumStrategy& s) {
  double p[2][2][2][2];
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          p[a][b][x][y] = born_probability(s.rho, s.a[x][a], s.b[y][b]);
  return Box::from_table(p);
}

double chsh_value(const Box& b) {
  auto corr = [&](int x, int y) {
    double e = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int bb = 0; bb < 2; ++bb)
        e += ((a ^ bb) ? -1.0 : 1.0) * b(a, bb, x, y);
    return e;
  };
  return corr(0, 0) + corr(0, 1) + corr(1, 0) - corr(1, 1);
}

std::array<std::array<double, 4>, 4> chsh_functional() {
  std::array<std::array<double, 4>, 4> f{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          f[2 * x + a][2 * y + b] =
              ((a ^ b) ? -1.0 : 1.0) * ((x & y) ? -1.0 : 1.0);
  return f;
}

// ---------------------------------------------------------------------------
// Seesaw optimization

namespace {

HermMatrix partial_trace_b(const HermMatrix& rho, const HermMatrix& b, int d) {
  HermMatrix n(d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) s += rho(i * d + k, j * d + l) * b(l, k);
      n.set(i, j, s);
    }
  return n;
}

HermMatrix partial_trace_a(const HermMatrix& rho, const HermMatrix& a, int d) {
  HermMatrix n(d);
  for (int k = 0; k < d; ++k)
    for (int l = k; l < d; ++l) {
      Complex s = 0.0;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) s += rho(i * d + k, j * d + l) * a(j, i);
      n.set(k, l, s);
    }
  return n;
}

// Projector onto the strictly positive eigenspace.
HermMatrix positive_part_projector(const HermMatrix& m) {
  const numerics::Spectrum sp = numerics::eigh(m);
  const int n = m.dim();
  GeneralMatrix acc(n, n);
  for (int c = 0; c < n; ++c) {
    if (sp.eigenvalues[c] <= 1e-14) continue;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        acc(i, j) += sp.eigenvectors(i, c) * std::conj(sp.eigenvectors(j, c));
  }
  return HermMatrix::from_general(acc, 1e-9);
}

double strategy_value(const std::array<std::array<double, 4>, 4>& f,
                      const QuantumStrategy& s) {
  double v = 0.0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          v += f[2 * x + a][2 * y + b] *
               born_probability(s.rho, s.a[x][a], s.b[y][b]);
  return v;
}

}  // namespace

SeesawResult seesaw_maximize(const std::array<std::array<double, 4>, 4>& f,
                             int dim, int restarts, uint64_t seed) {
  if (dim < 2) throw std::invalid_argument("seesaw_maximize: dim must be >= 2");
  Rng rng(seed);
  SeesawResult best;
  best.value = -std::numeric_limits<double>::infinity();
  const HermMatrix id = HermMatrix::identity(dim);

  for (int r = 0; r < restarts; ++r) {
    QuantumStrategy s;
    s.dim = dim;
    s.rho = random_density(rng, dim * dim);
    for (int x = 0; x < 2; ++x) {
      const HermMatrix pa = positive_part_projector(random_hermitian(rng, dim));
      const HermMatrix pb = positive_part_projector(random_hermitian(rng, dim));
      s.a[x][0] = pa;
      s.a[x][1] = id - pa;
      s.b[x][0] = pb;
      s.b[x][1] = id - pb;
    }

    double value = strategy_value(f, s);
    std::vector<double> history{value};
    for (int it = 0; it < 300; ++it) {
      // State update: top eigenvector of the global functional operator.
      HermMatrix g(dim * dim);
      {
        GeneralMatrix acc(dim * dim, dim * dim);
        for (int x = 0; x < 2; ++x)
          for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
              for (int b = 0; b < 2; ++b) {
                const double w = f[2 * x + a][2 * y + b];
                if (w == 0.0) continue;
                acc = acc + numerics::kron(s.a[x][a], s.b[y][b]).to_general() * w;
              }
        g = HermMatrix::from_general(acc, 1e-9);
      }
      const numerics::Spectrum sp = numerics::eigh(g);
      {
        const int top = dim * dim - 1;
        HermMatrix rho(dim * dim);
        for (int i = 0; i < dim * dim; ++i)
          for (int j = i; j < dim * dim; ++j)
            rho.set(i, j, sp.eigenvectors(i, top) *
                              std::conj(sp.eigenvectors(j, top)));
        s.rho = rho;
      }

      // Alice update: for each input the optimal binary POVM is the
      // positive-part projector of the advantage operator.
      for (int x = 0; x < 2; ++x) {
        HermMatrix n0(dim), n1(dim);
        for (int y = 0; y < 2; ++y)
          for (int b = 0; b < 2; ++b) {
            const HermMatrix nb = partial_trace_b(s.rho, s.b[y][b], dim);
            n0 = n0 + nb * f[2 * x + 0][2 * y + b];
            n1 = n1 + nb * f[2 * x + 1][2 * y + b];
          }
        const HermMatrix proj = positive_part_projector(n0 - n1);
        s.a[x][0] = proj;
        s.a[x][1] = id - proj;
      }
      // Bob update, symmetrically.
      for (int y = 0; y < 2; ++y) {
        HermMatrix n0(dim), n1(dim);
        for (int x = 0; x < 2; ++x)
          for (int a = 0; a < 2; ++a) {
            const HermMatrix na = partial_trace_a(s.rho, s.a[x][a], dim);
            n0 = n0 + na * f[2 * x + a][2 * y + 0];
            n1 = n1 + na * f[2 * x + a][2 * y + 1];
          }
        const HermMatrix proj = positive_part_projector(n0 - n1);
        s.b[y][0] = proj;
        s.b[y][1] = id - proj;
      }

      const double next = strategy_value(f, s);
      history.push_back(std::max(next, history.back()));
      if (next <= value + 1e-13) {
        value = std::max(value, next);
        break;
      }
      value = next;
    }

    if (value > best.value + 1e-15) {
      best.value = value;
      best.strategy = s;
      best.history = history;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Constructive witnesses

namespace {

// Completes the orthonormal columns marked valid to a full unitary by
// Gram-Schmidt over the standard basis.
void complete_orthonormal(GeneralMatrix& v, const std::vector<bool>& valid) {
  const int d = v.rows();
  std::vector<int> have, need;
  for (int c = 0; c < d; ++c) (valid[c] ? have : need).push_back(c);
  int basis = 0;
  for (int slot : need) {
    for (; basis < d; ++basis) {
      std::vector<Complex> cand(d, 0.0);
      cand[basis] = 1.0;
      for (int c : have) {
        Complex proj = 0.0;
        for (int i = 0; i < d; ++i) proj += std::conj(v(i, c)) * cand[i];
        for (int i = 0; i < d; ++i) cand[i] -= proj * v(i, c);
      }
      double norm = 0.0;
      for (const Complex& x : cand) norm += std::norm(x);
      norm = std::sqrt(norm);
      if (norm > 0.3) {
        for (int i = 0; i < d; ++i) v(i, slot) = cand[i] / norm;
        have.push_back(slot);
        ++basis;
        break;
      }
    }
  }
}

}  // namespace

FactorWitness witness_from_strategy(const QuantumStrategy& s) {
  const int d = s.dim;
  // Spectral decomposition of rho: a mixture of pure states. Each pure
  // component psi = sum_c s_c |u_c>|v_c> contributes a Schmidt-compressed
  // block X_i = w D A'_i D, Y_j = (B'_j)^t with A' = U*AU, B' = V*BV; the
  // direct sum over components realizes the box probabilities as traces.
  const numerics::Spectrum rs = numerics::eigh(s.rho);
  std::vector<std::pair<double, std::vector<Complex>>> components;
  for (int c = 0; c < d * d; ++c)
    if (rs.eigenvalues[c] > 1e-12) {
      std::vector<Complex> psi(d * d);
      for (int i = 0; i < d * d; ++i) psi[i] = rs.eigenvectors(i, c);
      components.emplace_back(rs.eigenvalues[c], std::move(psi));
    }
  const int p = d * static_cast<int>(components.size());

  std::array<HermMatrix, 4> xs{HermMatrix(p), HermMatrix(p), HermMatrix(p),
                               HermMatrix(p)};
  std::array<HermMatrix, 4> ys{HermMatrix(p), HermMatrix(p), HermMatrix(p),
                               HermMatrix(p)};

  int off = 0;
  for (const auto& [weight, psi] : components) {
    GeneralMatrix m(d, d);
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) m(i, k) = psi[i * d + k];

    const numerics::Spectrum left =
        numerics::eigh(HermMatrix::from_general(m * m.adjoint(), 1e-9));
    GeneralMatrix u(d, d);
    std::vector<double> schmidt(d, 0.0);
    for (int c = 0; c < d; ++c) {
      const int src = d - 1 - c;  // descending
      schmidt[c] = std::sqrt(std::max(0.0, left.eigenvalues[src]));
      for (int i = 0; i < d; ++i) u(i, c) = left.eigenvectors(i, src);
    }
    // Right Schmidt basis v_c = M^T conj(u_c) / s_c, completed to a unitary
    // on the kernel directions.
    GeneralMatrix v(d, d);
    std::vector<bool> valid(d, false);
    for (int c = 0; c < d; ++c) {
      if (schmidt[c] <= 1e-10) continue;
      for (int k = 0; k < d; ++k) {
        Complex acc = 0.0;
        for (int i = 0; i < d; ++i) acc += m(i, k) * std::conj(u(i, c));
        v(k, c) = acc / schmidt[c];
      }
      valid[c] = true;
    }
    complete_orthonormal(v, valid);

    GeneralMatrix dmat(d, d);
    for (int c = 0; c < d; ++c) dmat(c, c) = schmidt[c];

    for (int idx = 0; idx < 4; ++idx) {
      const int x = idx / 2, a = idx % 2;
      const GeneralMatrix xa =
          dmat * (u.adjoint() * s.a[x][a].to_general() * u) * dmat;
      const GeneralMatrix yb =
          (v.adjoint() * s.b[x][a].to_general() * v).transpose();
      for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
          xs[idx].set(off + i, off + j, weight * xa(i, j));
          ys[idx].set(off + i, off + j, yb(i, j));
        }
    }
    off += d;
  }
  return FactorWitness::make(xs, ys, 1e-7);
}

FactorWitness witness_from_local_model(const LocalModel& m) {
  std::vector<int> support;
  for (int k = 0; k < 16; ++k)
    if (m.weights[k] > 1e-15) support.push_back(k);
  if (support.empty()) throw std::invalid_argument("empty local model");
  const int p = static_cast<int>(support.size());
  std::array<HermMatrix, 4> xs{HermMatrix(p), HermMatrix(p), HermMatrix(p),
                               HermMatrix(p)};
  std::array<HermMatrix, 4> ys{HermMatrix(p), HermMatrix(p), HermMatrix(p),
                               HermMatrix(p)};
  for (int s = 0; s < p; ++s) {
    const int k = support[s];
    const int f0 = (k >> 3) & 1, f1 = (k >> 2) & 1, g0 = (k >> 1) & 1,
              g1 = k & 1;
    const int f[2] = {f0, f1};
    const int g[2] = {g0, g1};
    const double w = m.weights[k];
    for (int x = 0; x < 2; ++x)
      for (int a = 0; a < 2; ++a) {
        if (f[x] == a) xs[2 * x + a].set(s, s, w);
        if (g[x] == a) ys[2 * x + a].set(s, s, 1.0);
      }
  }
  return FactorWitness::make(xs, ys, 1e-9);
}

// ---------------------------------------------------------------------------
// Classification

std::string to_string(QVerdict v) {
  switch (v) {
    case QVerdict::yes_witness: return "yes (max-cone witness)";
    case QVerdict::no_sqrt_bell: return "no (sqrt-Bell violated)";
    case QVerdict::undecided: return "undecided";
  }
  return "?";
}

namespace {

// Product boxes q_ij = x_i y_j admit a scalar witness.
std::optional<FactorWitness> product_witness(const BoxMatrix& m) {
  double x[4], y[4];
  for (int i = 0; i < 4; ++i) {
    x[i] = (m(i, 0) + m(i, 1) + m(i, 2) + m(i, 3)) / 2.0;
    y[i] = (m(0, i) + m(1, i) + m(2, i) + m(3, i)) / 2.0;
    if (x[i] < -1e-12 || y[i] < -1e-12) return std::nullopt;
  }
  if (std::abs(y[0] + y[1] - 1.0) > 1e-10 || std::abs(y[2] + y[3] - 1.0) > 1e-10)
    return std::nullopt;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (std::abs(m(i, j) - x[i] * y[j]) > 1e-10) return std::nullopt;
  auto scalar = [](double v) {
    HermMatrix h(1);
    h.set(0, 0, std::max(0.0, v));
    return h;
  };
  return FactorWitness::make({scalar(x[0]), scalar(x[1]), scalar(x[2]), scalar(x[3])},
                             {scalar(y[0]), scalar(y[1]), scalar(y[2]), scalar(y[3])});
}

}  // namespace

ClassifyReport classify(const Box& b, const ClassifyOptions& opt) {
  ClassifyReport rep;
  const BoxMatrix m = box_to_matrix(b);
  rep.nonsignaling_p = tensorlab::min_cone_member(m, opt.tol);
  rep.chsh = chsh_value(b);
  rep.bell = tensorlab::sqrt_bell_value(m);
  rep.local_detail = local_membership(b, opt.tol);
  rep.local = rep.local_detail.local;

  if (rep.bell.any_violated()) {
    rep.quantum = QVerdict::no_sqrt_bell;
    return rep;
  }
  if (auto w = product_witness(m)) {
    rep.witness = std::move(w);
    rep.quantum = QVerdict::yes_witness;
    return rep;
  }
  if (rep.local) {
    rep.witness = witness_from_local_model(rep.local_detail.model);
    rep.quantum = QVerdict::yes_witness;
    return rep;
  }
  const tensorlab::SearchResult sr =
      tensorlab::max_cone_search(m, opt.witness_dim, opt.restarts, opt.seed);
  if (sr.found) {
    rep.witness = sr.witness;
    rep.quantum = QVerdict::yes_witness;
  } else {
    rep.quantum = QVerdict::undecided;
  }
  return rep;
}

ClassifyReport classify_table(const double (&p)[2][2][2][2],
                              const ClassifyOptions& opt) {
  std::vector<ValidationIssue> issues;
  const std::optional<Box> box = Box::try_from_table(p, &issues);
  if (!box) {
    ClassifyReport rep;
    rep.valid_box = false;
    rep.issues = std::move(issues);
    rep.nonsignaling_p = false;
    rep.local = false;
    rep.quantum = QVerdict::undecided;
    return rep;
  }
  return classify(*box, opt);
}

}  // namespace oscone::boxes
