#include "oscone/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace oscone::numerics {

namespace {

void check_shape(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

// ---------------------------------------------------------------------------
// GeneralMatrix

GeneralMatrix::GeneralMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  check_shape(rows > 0 && cols > 0, "GeneralMatrix: dimensions must be positive");
  e_.assign(static_cast<size_t>(rows) * cols, Complex(0.0, 0.0));
}

GeneralMatrix GeneralMatrix::identity(int n) {
  GeneralMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

GeneralMatrix GeneralMatrix::from_rows(const std::vector<std::vector<Complex>>& rows) {
  check_shape(!rows.empty() && !rows[0].empty(), "from_rows: empty data");
  GeneralMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows_; ++i) {
    check_shape(static_cast<int>(rows[i].size()) == m.cols_, "from_rows: ragged rows");
    for (int j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

GeneralMatrix GeneralMatrix::adjoint() const {
  GeneralMatrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

GeneralMatrix GeneralMatrix::transpose() const {
  GeneralMatrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

GeneralMatrix GeneralMatrix::conj() const {
  GeneralMatrix m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(i, j) = std::conj((*this)(i, j));
  return m;
}

GeneralMatrix GeneralMatrix::operator+(const GeneralMatrix& o) const {
  check_shape(rows_ == o.rows_ && cols_ == o.cols_, "matrix add: shape mismatch");
  GeneralMatrix m = *this;
  for (size_t k = 0; k < e_.size(); ++k) m.e_[k] += o.e_[k];
  return m;
}

GeneralMatrix GeneralMatrix::operator-(const GeneralMatrix& o) const {
  check_shape(rows_ == o.rows_ && cols_ == o.cols_, "matrix sub: shape mismatch");
  GeneralMatrix m = *this;
  for (size_t k = 0; k < e_.size(); ++k) m.e_[k] -= o.e_[k];
  return m;
}

GeneralMatrix GeneralMatrix::operator*(const GeneralMatrix& o) const {
  check_shape(cols_ == o.rows_, "matrix mul: shape mismatch");
  GeneralMatrix m(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Complex aik = (*this)(i, k);
      if (aik == Complex(0.0, 0.0)) continue;
      for (int j = 0; j < o.cols_; ++j) m(i, j) += aik * o(k, j);
    }
  return m;
}

GeneralMatrix GeneralMatrix::operator*(Complex s) const {
  GeneralMatrix m = *this;
  for (auto& v : m.e_) v *= s;
  return m;
}

double GeneralMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& v : e_) s += std::norm(v);
  return std::sqrt(s);
}

Complex GeneralMatrix::trace() const {
  check_shape(is_square(), "trace: matrix not square");
  Complex s = 0.0;
  for (int i = 0; i < rows_; ++i) s += (*this)(i, i);
  return s;
}

// ---------------------------------------------------------------------------
// HermMatrix

HermMatrix::HermMatrix(int dim) : dim_(dim) {
  check_shape(dim > 0, "HermMatrix: dimension must be positive");
  e_.assign(static_cast<size_t>(dim) * dim, Complex(0.0, 0.0));
}

HermMatrix HermMatrix::identity(int dim) {
  HermMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.e_[i * dim + i] = 1.0;
  return m;
}

HermMatrix HermMatrix::diagonal(const std::vector<double>& d) {
  HermMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.dim_; ++i) m.e_[i * m.dim_ + i] = d[i];
  return m;
}

HermMatrix HermMatrix::from_rows(const std::vector<std::vector<Complex>>& rows,
                                 double tol) {
  return from_general(GeneralMatrix::from_rows(rows), tol);
}

HermMatrix HermMatrix::from_general(const GeneralMatrix& g, double tol) {
  check_shape(g.is_square(), "HermMatrix: matrix not square");
  const int n = g.rows();
  double dev = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      dev = std::max(dev, std::abs(g(i, j) - std::conj(g(j, i))));
  if (dev > tol * (1.0 + g.frobenius_norm()))
    throw std::invalid_argument("HermMatrix: input deviates from Hermitian");
  HermMatrix m(n);
  for (int i = 0; i < n; ++i) {
    m.e_[i * n + i] = g(i, i).real();
    for (int j = i + 1; j < n; ++j) {
      const Complex v = 0.5 * (g(i, j) + std::conj(g(j, i)));
      m.e_[i * n + j] = v;
      m.e_[j * n + i] = std::conj(v);
    }
  }
  return m;
}

void HermMatrix::set(int i, int j, Complex v) {
  if (i == j) {
    e_[i * dim_ + i] = v.real();
  } else {
    e_[i * dim_ + j] = v;
    e_[j * dim_ + i] = std::conj(v);
  }
}

GeneralMatrix HermMatrix::to_general() const {
  GeneralMatrix m(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

HermMatrix HermMatrix::operator+(const HermMatrix& o) const {
  check_shape(dim_ == o.dim_, "HermMatrix add: dimension mismatch");
  HermMatrix m = *this;
  for (size_t k = 0; k < e_.size(); ++k) m.e_[k] += o.e_[k];
  return m;
}

HermMatrix HermMatrix::operator-(const HermMatrix& o) const {
  check_shape(dim_ == o.dim_, "HermMatrix sub: dimension mismatch");
  HermMatrix m = *this;
  for (size_t k = 0; k < e_.size(); ++k) m.e_[k] -= o.e_[k];
  return m;
}

HermMatrix HermMatrix::operator*(double s) const {
  HermMatrix m = *this;
  for (auto& v : m.e_) v *= s;
  return m;
}

double HermMatrix::trace() const {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) s += (*this)(i, i).real();
  return s;
}

double HermMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& v : e_) s += std::norm(v);
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Eigensolver

namespace {

// One cyclic Jacobi sweep over the strict upper triangle, zeroing each pivot
// with a complex rotation. a is updated in place; v accumulates the rotations.
double jacobi_sweep(GeneralMatrix& a, GeneralMatrix& v, double thresh) {
  const int n = a.rows();
  double off = 0.0;
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      const Complex apq = a(p, q);
      const double r = std::abs(apq);
      off += 2.0 * r * r;
      if (r <= thresh) continue;
      const Complex phase = apq / r;  // e^{i phi}
      const double app = a(p, p).real();
      const double aqq = a(q, q).real();
      // ctg(2 theta) = (app - aqq) / (2 r); pick the smaller rotation.
      const double tau = (app - aqq) / (2.0 * r);
      const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
      const double c = 1.0 / std::sqrt(1.0 + t * t);
      const double s = t * c;

      // A <- U* A U with U(p,p)=c, U(p,q)=-s*phase, U(q,p)=s*conj(phase), U(q,q)=c.
      for (int k = 0; k < n; ++k) {
        if (k == p || k == q) continue;
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        const Complex nkp = c * akp + s * std::conj(phase) * akq;
        const Complex nkq = -s * phase * akp + c * akq;
        a(k, p) = nkp;
        a(p, k) = std::conj(nkp);
        a(k, q) = nkq;
        a(q, k) = std::conj(nkq);
      }
      const double npp = c * c * app + s * s * aqq + 2.0 * c * s * r;
      const double nqq = s * s * app + c * c * aqq - 2.0 * c * s * r;
      a(p, p) = npp;
      a(q, q) = nqq;
      a(p, q) = 0.0;
      a(q, p) = 0.0;
      for (int k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = c * vkp + s * std::conj(phase) * vkq;
        v(k, q) = -s * phase * vkp + c * vkq;
      }
    }
  return std::sqrt(off);
}

}  // namespace

Spectrum eigh(const HermMatrix& m) {
  const int n = m.dim();
  GeneralMatrix a = m.to_general();
  GeneralMatrix v = GeneralMatrix::identity(n);
  const double scale = std::max(1.0, m.frobenius_norm());

  if (n > 1) {
    for (int sweep = 0; sweep < 60; ++sweep) {
      const double off = jacobi_sweep(a, v, 1e-300);
      if (off <= 1e-15 * scale) break;
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = a(i, i).real();
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return diag[i] < diag[j]; });

  Spectrum sp;
  sp.eigenvalues.resize(n);
  sp.eigenvectors = GeneralMatrix(n, n);
  for (int c = 0; c < n; ++c) {
    const int src = order[c];
    sp.eigenvalues[c] = diag[src];
    // Phase convention: largest-magnitude component real and positive.
    int imax = 0;
    double best = -1.0;
    for (int k = 0; k < n; ++k) {
      const double mag = std::abs(v(k, src));
      if (mag > best + 1e-15) {
        best = mag;
        imax = k;
      }
    }
    Complex ph(1.0, 0.0);
    if (best > 0.0) ph = std::conj(v(imax, src)) / best;
    for (int k = 0; k < n; ++k) sp.eigenvectors(k, c) = v(k, src) * ph;
  }
  return sp;
}

double lambda_min(const HermMatrix& m) {
  if (m.dim() == 2) {
    // Closed form; used heavily by torus grid scans.
    const double a = m(0, 0).real(), d = m(1, 1).real();
    const double mid = 0.5 * (a + d);
    const double rad = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m(0, 1)));
    return mid - rad;
  }
  return eigh(m).eigenvalues.front();
}

double lambda_max(const HermMatrix& m) {
  if (m.dim() == 2) {
    const double a = m(0, 0).real(), d = m(1, 1).real();
    const double mid = 0.5 * (a + d);
    const double rad = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m(0, 1)));
    return mid + rad;
  }
  return eigh(m).eigenvalues.back();
}

bool is_psd(const HermMatrix& m, double tol) { return lambda_min(m) >= -tol; }

HermMatrix psd_project(const HermMatrix& m) {
  const Spectrum sp = eigh(m);
  const int n = m.dim();
  GeneralMatrix r(n, n);
  for (int c = 0; c < n; ++c) {
    const double lam = std::max(0.0, sp.eigenvalues[c]);
    if (lam == 0.0) continue;
    for (int i = 0; i < n; ++i) {
      const Complex ui = sp.eigenvectors(i, c);
      for (int j = 0; j < n; ++j)
        r(i, j) += lam * ui * std::conj(sp.eigenvectors(j, c));
    }
  }
  return HermMatrix::from_general(r, 1e-9);
}

// ---------------------------------------------------------------------------
// Numerical radius

namespace {

HermMatrix real_part_rotated(const GeneralMatrix& t, double theta) {
  const Complex ph = std::polar(1.0, theta);
  const int n = t.rows();
  GeneralMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g(i, j) = 0.5 * (ph * t(i, j) + std::conj(ph * t(j, i)));
  return HermMatrix::from_general(g, 1e-9);
}

}  // namespace

double numerical_radius(const GeneralMatrix& t) {
  check_shape(t.is_square(), "numerical_radius: matrix not square");
  const int n = t.rows();
  if (t.frobenius_norm() == 0.0) return 0.0;

  // Coarse scan over theta, then local fixed-point refinement from the best
  // few directions: the top eigenvector xi of Re(e^{i theta} T) yields a
  // numerical-range point z = <T xi, xi>, and theta <- -arg(z) is monotone.
  const int grid = 733;
  double best = 0.0;
  std::vector<std::pair<double, double>> cand;  // (value, theta)
  for (int k = 0; k < grid; ++k) {
    const double theta = 2.0 * M_PI * k / grid;
    const double val = lambda_max(real_part_rotated(t, theta));
    cand.emplace_back(val, theta);
    best = std::max(best, val);
  }
  std::sort(cand.begin(), cand.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  const int tops = std::min<int>(5, static_cast<int>(cand.size()));
  for (int c = 0; c < tops; ++c) {
    double theta = cand[c].second;
    double prev = -1.0;
    for (int it = 0; it < 200; ++it) {
      const Spectrum sp = eigh(real_part_rotated(t, theta));
      const int last = n - 1;
      Complex z = 0.0;
      for (int i = 0; i < n; ++i) {
        Complex row = 0.0;
        for (int j = 0; j < n; ++j) row += t(i, j) * sp.eigenvectors(j, last);
        z += std::conj(sp.eigenvectors(i, last)) * row;
      }
      const double val = std::abs(z);
      best = std::max(best, std::max(val, sp.eigenvalues[last]));
      if (val <= prev + 1e-15) break;
      prev = val;
      theta = -std::arg(z);
    }
  }
  return best;
}

double op_norm(const GeneralMatrix& t) {
  const GeneralMatrix g = t.adjoint() * t;
  return std::sqrt(std::max(0.0, lambda_max(HermMatrix::from_general(g, 1e-9))));
}

// ---------------------------------------------------------------------------

HermMatrix schur_product(const HermMatrix& a, const HermMatrix& t) {
  check_shape(a.dim() == t.dim(), "schur_product: dimension mismatch");
  HermMatrix m(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i; j < a.dim(); ++j) m.set(i, j, a(i, j) * t(i, j));
  return m;
}

HermMatrix halmos_dilation(const HermMatrix& a) {
  const int n = a.dim();
  const HermMatrix id = HermMatrix::identity(n);
  if (!is_psd(id - a, 1e-10) || !is_psd(a + id, 1e-10))
    throw std::domain_error("halmos_dilation: spectrum outside [-1,1]");

  // s = (I - a^2)^{1/2} via the spectral decomposition of a; eigenvalue
  // noise below -1e-12 is clamped before the square root.
  const Spectrum sp = eigh(a);
  GeneralMatrix s(n, n);
  for (int c = 0; c < n; ++c) {
    const double lam = sp.eigenvalues[c];
    const double w = std::sqrt(std::max(0.0, 1.0 - lam * lam));
    if (w == 0.0) continue;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        s(i, j) += w * sp.eigenvectors(i, c) * std::conj(sp.eigenvectors(j, c));
  }

  HermMatrix u(2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (j >= i) u.set(i, j, a(i, j));
      u.set(i, n + j, s(i, j));
      if (j >= i) u.set(n + i, n + j, -a(i, j));
    }
  return u;
}

CholeskyComplementResult cholesky_complement(const HermMatrix& block,
                                             std::pair<int, int> split,
                                             double tol) {
  const int p = split.first, q = split.second;
  check_shape(p > 0 && q > 0 && p + q == block.dim(),
              "cholesky_complement: split does not partition the block");

  GeneralMatrix a(p, p), x(p, q), c(q, q);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) a(i, j) = block(i, j);
    for (int j = 0; j < q; ++j) x(i, j) = block(i, p + j);
  }
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) c(i, j) = block(p + i, p + j);

  const Spectrum sp = eigh(HermMatrix::from_general(a, 1e-9));
  const double lmax = std::max(std::abs(sp.eigenvalues.front()),
                               std::abs(sp.eigenvalues.back()));
  const double cut = 1e-10 * std::max(lmax, 1e-300);

  // A^+ X and (I - A A^+) X from the spectral data of A.
  GeneralMatrix apx(p, q), residual = x;
  for (int k = 0; k < p; ++k) {
    const double lam = sp.eigenvalues[k];
    std::vector<Complex> ux(q, 0.0);  // u_k^* X
    for (int j = 0; j < q; ++j)
      for (int i = 0; i < p; ++i)
        ux[j] += std::conj(sp.eigenvectors(i, k)) * x(i, j);
    if (std::abs(lam) <= cut) continue;
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < q; ++j) {
        apx(i, j) += sp.eigenvectors(i, k) * ux[j] / lam;
        residual(i, j) -= sp.eigenvectors(i, k) * ux[j];
      }
  }

  CholeskyComplementResult out{
      HermMatrix::from_general(c - x.adjoint() * apx, 1e-8),
      sp.eigenvalues.front() >= -tol * (1.0 + lmax),
      residual.frobenius_norm() <= tol * (1.0 + x.frobenius_norm())};
  return out;
}

HermMatrix kron(const HermMatrix& a, const HermMatrix& b) {
  const int na = a.dim(), nb = b.dim();
  HermMatrix m(na * nb);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j)
      for (int k = 0; k < nb; ++k)
        for (int l = 0; l < nb; ++l) {
          const int r = i * nb + k, c = j * nb + l;
          if (c >= r) m.set(r, c, a(i, j) * b(k, l));
        }
  return m;
}

GeneralMatrix kron(const GeneralMatrix& a, const GeneralMatrix& b) {
  GeneralMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return m;
}

}  // namespace oscone::numerics
