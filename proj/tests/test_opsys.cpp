#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oscone/opsys.hpp"
#include "oscone/rng.hpp"

using namespace oscone;
using convex::SolveStatus;
using numerics::Complex;
using numerics::GeneralMatrix;
using numerics::HermMatrix;
using opsys::LInfVec;
using opsys::NC2Coeff;
using opsys::VVec;

TEST_CASE("gamma_quotient: unit, kernel direction, basis vector") {
  const NC2Coeff unit = opsys::gamma_quotient({{1, 1, 1, 1}});
  CHECK(unit.c0(0, 0).real() == doctest::Approx(1.0));
  CHECK(unit.c1(0, 0).real() == doctest::Approx(0.0));
  CHECK(unit.c2(0, 0).real() == doctest::Approx(0.0));

  const NC2Coeff ker = opsys::gamma_quotient({{1, 1, -1, -1}});
  CHECK(ker.c0(0, 0).real() == 0.0);
  CHECK(ker.c1(0, 0).real() == 0.0);
  CHECK(ker.c2(0, 0).real() == 0.0);

  const NC2Coeff e1 = opsys::gamma_quotient({{1, 0, 0, 0}});
  CHECK(e1.c0(0, 0).real() == doctest::Approx(0.25));
  CHECK(e1.c1(0, 0).real() == doctest::Approx(0.25));
  CHECK(e1.c2(0, 0).real() == doctest::Approx(0.0));
}

TEST_CASE("gamma_quotient: linearity and kernel span") {
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    LInfVec u{{rng.normal(), rng.normal(), rng.normal(), rng.normal()}};
    const double s = rng.normal();
    LInfVec shifted = u;
    for (int i = 0; i < 4; ++i)
      shifted.values[i] += s * ((i < 2) ? 1.0 : -1.0);  // add s*(1,1,-1,-1)
    const NC2Coeff a = opsys::gamma_quotient(u);
    const NC2Coeff b = opsys::gamma_quotient(shifted);
    CHECK(a.c0(0, 0).real() == doctest::Approx(b.c0(0, 0).real()).epsilon(1e-12));
    CHECK(a.c1(0, 0).real() == doctest::Approx(b.c1(0, 0).real()).epsilon(1e-12));
    CHECK(a.c2(0, 0).real() == doctest::Approx(b.c2(0, 0).real()).epsilon(1e-12));
  }
}

TEST_CASE("gamma_quotient: positive cone lands in the admissible coefficients") {
  Rng rng(6);
  for (int t = 0; t < 200; ++t) {
    LInfVec u{{rng.uniform(), rng.uniform(), rng.uniform(), rng.uniform()}};
    const NC2Coeff c = opsys::gamma_quotient(u);
    CHECK(c.c0(0, 0).real() >=
          std::abs(c.c1(0, 0).real()) + std::abs(c.c2(0, 0).real()) - 1e-12);
  }
}

TEST_CASE("nc2_positivity: scalar examples") {
  CHECK(opsys::nc2_positivity(NC2Coeff::scalar(3, 1, 1), 1e-6).status ==
        SolveStatus::feasible);
  CHECK(opsys::nc2_positivity(NC2Coeff::scalar(2, 1, 1), 1e-6).status ==
        SolveStatus::infeasible_evidence);
  CHECK(opsys::nc2_positivity(NC2Coeff::scalar(1, 0, 0), 1e-6).status ==
        SolveStatus::feasible);
}

TEST_CASE("nc2_positivity: matrix coefficients, diagonal reduction") {
  // Diagonal matrix coefficients decouple into scalar instances.
  NC2Coeff c{HermMatrix::diagonal({3.0, 1.0}), HermMatrix::diagonal({1.0, 0.2}),
             HermMatrix::diagonal({1.0, 0.3})};
  CHECK(opsys::nc2_positivity(c, 1e-6).status == SolveStatus::feasible);

  NC2Coeff bad{HermMatrix::diagonal({3.0, 1.0}), HermMatrix::diagonal({1.0, 0.8}),
               HermMatrix::diagonal({1.0, 0.8})};
  CHECK(opsys::nc2_positivity(bad, 1e-6).status ==
        SolveStatus::infeasible_evidence);
}

TEST_CASE("v_from_functional: point evaluations and constraint") {
  const VVec v = opsys::v_from_functional(1, 0, 1, 0);
  CHECK(v.a() == 1.0);
  CHECK(v.d() == 0.0);
  const VVec u = opsys::v_from_functional(0.5, 0.5, 0.5, 0.5);
  CHECK(u.min_entry() == 0.5);
  CHECK_THROWS_AS(opsys::v_from_functional(1, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("v_from_functional: dual pairing identity on 100 random pairs") {
  Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    // Random functional values with the V constraint.
    const double a = rng.normal(), b = rng.normal(), c = rng.normal();
    const double d = a + b - c;
    const VVec v = opsys::v_from_functional(a, b, c, d);
    // Random preimage in l^inf_4.
    LInfVec u{{rng.normal(), rng.normal(), rng.normal(), rng.normal()}};
    const NC2Coeff g = opsys::gamma_quotient(u);
    // f_s(gamma(u)) = (1/2) <u, s>.
    const double direct = 0.5 * (u.values[0] * a + u.values[1] * b +
                                 u.values[2] * c + u.values[3] * d);
    CHECK(opsys::pair_v_nc2(v, g) == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("VVec positivity matches dual admissibility (500 random)") {
  Rng rng(13);
  for (int t = 0; t < 500; ++t) {
    const double a = rng.uniform(-0.5, 1.5), b = rng.uniform(-0.5, 1.5);
    const double c = rng.uniform(-0.5, 1.5);
    const double d = a + b - c;
    const VVec v = opsys::v_from_functional(a, b, c, d);
    if (v.min_entry() >= 0.0) {
      // Pairs nonnegatively with every positive scalar NC(2) element.
      for (int k = 0; k < 20; ++k) {
        const double c1 = rng.uniform(-1, 1), c2 = rng.uniform(-1, 1);
        const double c0 = std::abs(c1) + std::abs(c2) + rng.uniform(0, 1);
        CHECK(opsys::pair_v_nc2(v, NC2Coeff::scalar(c0, c1, c2)) >= -1e-12);
      }
    } else {
      // One of the four canonical positive elements pairs negatively.
      const double w1 = opsys::pair_v_nc2(v, NC2Coeff::scalar(1, 1, 0));
      const double w2 = opsys::pair_v_nc2(v, NC2Coeff::scalar(1, -1, 0));
      const double w3 = opsys::pair_v_nc2(v, NC2Coeff::scalar(1, 0, 1));
      const double w4 = opsys::pair_v_nc2(v, NC2Coeff::scalar(1, 0, -1));
      CHECK(std::min(std::min(w1, w2), std::min(w3, w4)) < 0.0);
    }
  }
}

TEST_CASE("w_dual_embed: examples") {
  const auto blocks0 = opsys::w_dual_embed({3, 1.0, {0.0, 0.0, 0.0}});
  CHECK(blocks0.size() == 3);
  for (const auto& b : blocks0)
    CHECK((b - HermMatrix::identity(2)).frobenius_norm() == 0.0);

  const auto blocks1 = opsys::w_dual_embed({2, 1.0, {1.0, 0.0}});
  CHECK(numerics::is_psd(blocks1[0], 0.0));
  CHECK(numerics::is_psd(blocks1[1], 0.0));

  const auto blocks2 = opsys::w_dual_embed({2, 1.0, {1.5, 0.0}});
  CHECK_FALSE(numerics::is_psd(blocks2[0], 1e-9));
  CHECK(numerics::lambda_min(blocks2[0]) == doctest::Approx(-0.5));
}

TEST_CASE("phi_k_apply: quotient coordinates") {
  // Identity tridiagonal: c0 = 1, generator coefficients vanish.
  opsys::TriDiag id{{1.0, 1.0, 1.0}, {0.0, 0.0}};
  const auto c = opsys::phi_k_apply(id);
  CHECK(c.c0.real() == doctest::Approx(1.0));
  for (const auto& cj : c.cs) CHECK(std::abs(cj) == 0.0);

  // A single super entry at position j maps to 1/k.
  opsys::TriDiag e12{{0.0, 0.0, 0.0}, {1.0, 0.0}};
  const auto c2 = opsys::phi_k_apply(e12);
  CHECK(c2.cs[0].real() == doctest::Approx(1.0 / 3.0));
  CHECK(std::abs(c2.cs[1]) == 0.0);
}

TEST_CASE("phi_k_apply: linearity and normalized unitality") {
  Rng rng(21);
  for (int t = 0; t < 50; ++t) {
    const int k = 2 + static_cast<int>(rng.uniform() * 4);
    opsys::TriDiag u, v;
    for (int i = 0; i < k; ++i) {
      u.diagonal.push_back(rng.cnormal());
      v.diagonal.push_back(rng.cnormal());
    }
    for (int i = 0; i + 1 < k; ++i) {
      u.super.push_back(rng.cnormal());
      v.super.push_back(rng.cnormal());
    }
    const double s = rng.normal();
    opsys::TriDiag w;
    for (int i = 0; i < k; ++i) w.diagonal.push_back(u.diagonal[i] + s * v.diagonal[i]);
    for (int i = 0; i + 1 < k; ++i) w.super.push_back(u.super[i] + s * v.super[i]);

    const auto cu = opsys::phi_k_apply(u);
    const auto cv = opsys::phi_k_apply(v);
    const auto cw = opsys::phi_k_apply(w);
    CHECK(std::abs(cw.c0 - (cu.c0 + s * cv.c0)) <= 1e-12);
    for (int i = 0; i + 1 < k; ++i)
      CHECK(std::abs(cw.cs[i] - (cu.cs[i] + s * cv.cs[i])) <= 1e-12);

    // k * c0 equals the diagonal sum.
    Complex diag_sum = 0.0;
    for (const auto& d : u.diagonal) diag_sum += d;
    CHECK(std::abs(static_cast<double>(k) * cu.c0 - diag_sum) <= 1e-12);
  }
}

TEST_CASE("s1_eval: examples") {
  // Constant identity.
  opsys::S1Elem id{HermMatrix::identity(2), GeneralMatrix(2, 2)};
  CHECK((opsys::s1_eval(id, Complex(0, 1)) - HermMatrix::identity(2))
            .frobenius_norm() <= 1e-14);

  // Scalar 1 + z/2 + conj(z)/2 vanishes at z = -1.
  GeneralMatrix half(1, 1);
  half(0, 0) = 0.5;
  opsys::S1Elem e{HermMatrix::identity(1), half};
  CHECK(opsys::s1_eval(e, Complex(-1, 0))(0, 0).real() ==
        doctest::Approx(0.0).epsilon(1e-14));

  CHECK_THROWS_AS(opsys::s1_eval(e, Complex(0.5, 0)), std::invalid_argument);
}

TEST_CASE("s1_eval: scalar circle-positivity criterion |coeff0| >= 2|coeff1|") {
  Rng rng(33);
  for (int t = 0; t < 100; ++t) {
    const double c0 = rng.uniform(0.0, 2.0);
    const Complex c1 = 0.5 * rng.cnormal();
    HermMatrix h0(1);
    h0.set(0, 0, c0);
    GeneralMatrix g1(1, 1);
    g1(0, 0) = c1;
    const opsys::S1Elem e{h0, g1};
    double min_val = 1e300;
    for (int k = 0; k < 720; ++k) {
      const Complex z = std::polar(1.0, 2.0 * M_PI * k / 720);
      min_val = std::min(min_val, opsys::s1_eval(e, z)(0, 0).real());
    }
    const bool criterion = c0 >= 2.0 * std::abs(c1) - 1e-9;
    // The grid minimum approximates c0 - 2|c1|.
    CHECK(min_val == doctest::Approx(c0 - 2.0 * std::abs(c1)).epsilon(1e-3));
    if (criterion)
      CHECK(min_val >= -1e-4);
    else
      CHECK(min_val < 1e-4);
  }
}

TEST_CASE("gamma_quotient: surjective onto coefficient triples") {
  Rng rng(71);
  for (int t = 0; t < 100; ++t) {
    const double c0 = rng.normal(), c1 = rng.normal(), c2 = rng.normal();
    const LInfVec pre{{c0 + 2 * c1, c0 - 2 * c1, c0 + 2 * c2, c0 - 2 * c2}};
    const NC2Coeff img = opsys::gamma_quotient(pre);
    CHECK(img.c0(0, 0).real() == doctest::Approx(c0).epsilon(1e-12));
    CHECK(img.c1(0, 0).real() == doctest::Approx(c1).epsilon(1e-12));
    CHECK(img.c2(0, 0).real() == doctest::Approx(c2).epsilon(1e-12));
  }
}
