#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "oscone/numerics.hpp"

namespace oscone {

/// Seeded random source with hand-rolled variate transforms, so streams are
/// reproducible across standard library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  // Uniform in (0, 1).
  double uniform() {
    return (static_cast<double>(eng_() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  numerics::Complex cnormal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

  uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

inline numerics::GeneralMatrix random_general(Rng& rng, int rows, int cols) {
  numerics::GeneralMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.cnormal();
  return m;
}

inline numerics::HermMatrix random_hermitian(Rng& rng, int dim, double scale = 1.0) {
  numerics::HermMatrix m(dim);
  for (int i = 0; i < dim; ++i) {
    m.set(i, i, scale * rng.normal());
    for (int j = i + 1; j < dim; ++j) m.set(i, j, scale * 0.5 * rng.cnormal());
  }
  return m;
}

inline numerics::HermMatrix random_psd(Rng& rng, int dim, double scale = 1.0) {
  const numerics::GeneralMatrix g = random_general(rng, dim, dim);
  return numerics::HermMatrix::from_general(g * g.adjoint(), 1e-9) * (scale / dim);
}

// Random PSD contraction 0 <= R <= I.
inline numerics::HermMatrix random_psd_contraction(Rng& rng, int dim) {
  const numerics::HermMatrix h = random_hermitian(rng, dim);
  const double bound = std::max(1.0, numerics::op_norm(h.to_general()));
  return (h * (0.5 / bound)) + (numerics::HermMatrix::identity(dim) * 0.5);
}

// Random density matrix (PSD, unit trace).
inline numerics::HermMatrix random_density(Rng& rng, int dim) {
  numerics::HermMatrix p = random_psd(rng, dim);
  const double tr = p.trace();
  return p * (1.0 / tr);
}

}  // namespace oscone
