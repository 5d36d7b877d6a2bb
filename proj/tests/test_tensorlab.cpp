#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oscone/rng.hpp"
#include "oscone/tensorlab.hpp"

using namespace oscone;
using convex::SolveStatus;
using numerics::Complex;
using numerics::GeneralMatrix;
using numerics::HermMatrix;
using tensorlab::BoxMatrix;
using tensorlab::FactorWitness;

namespace {

// Random witness generator: PSD splits of a common sum on the X side and of
// the identity on the Y side.
FactorWitness random_witness(Rng& rng, int p) {
  const HermMatrix id = HermMatrix::identity(p);
  const HermMatrix x1 = random_psd(rng, p);
  const HermMatrix x2 = random_psd(rng, p);
  const HermMatrix sum = x1 + x2;
  // X3 = S^{1/2} R S^{1/2}, X4 = S - X3 for a random contraction R.
  const numerics::Spectrum sp = numerics::eigh(sum);
  GeneralMatrix root(p, p);
  for (int c = 0; c < p; ++c) {
    const double w = std::sqrt(std::max(0.0, sp.eigenvalues[c]));
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j)
        root(i, j) += w * sp.eigenvectors(i, c) * std::conj(sp.eigenvectors(j, c));
  }
  const HermMatrix r = random_psd_contraction(rng, p);
  const HermMatrix x3 =
      HermMatrix::from_general(root * r.to_general() * root, 1e-8);
  const HermMatrix x4 = sum - x3;

  const HermMatrix y1 = random_psd_contraction(rng, p);
  const HermMatrix y3 = random_psd_contraction(rng, p);
  return FactorWitness::make({x1, x2, x3, x4}, {y1, id - y1, y3, id - y3}, 1e-8);
}

}  // namespace

TEST_CASE("BoxMatrix: construction checks and exact repair") {
  CHECK_THROWS_AS(BoxMatrix::from_entries(
                      {{{1, 0, 0, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}}}),
                  std::invalid_argument);
  // A slightly perturbed balanced matrix is repaired exactly.
  auto q = tensorlab::uniform_matrix().entries();
  q[0][0] += 5e-11;
  const BoxMatrix b = BoxMatrix::from_entries(q);
  CHECK(BoxMatrix::balance_violation(b.entries()) <= 1e-14);
}

TEST_CASE("min_cone_member: uniform, PR and displayed Q") {
  CHECK(tensorlab::min_cone_member(tensorlab::uniform_matrix(), 0.0));
  CHECK(tensorlab::min_cone_member(tensorlab::pr_matrix(), 0.0));
  CHECK(tensorlab::min_cone_member(tensorlab::displayed_q_matrix(), 0.0));
}

TEST_CASE("sqrt_bell_value: PR matrix violates with lhs 2, rhs 0") {
  const auto rep = tensorlab::sqrt_bell_value(tensorlab::pr_matrix());
  CHECK(rep.lhs[0] == 2.0);
  CHECK(rep.lhs[1] == 2.0);
  CHECK(rep.rhs == 0.0);
  CHECK(rep.violated(0));

  // The four vanishing cross terms of the proof, at (a,c) = (0,2):
  // b=0 over columns (2,3) and (1,4), b=2 over columns (1,3) and (2,4).
  const auto& q = tensorlab::pr_matrix().entries();
  auto term = [&](int b, int c1, int c2) {
    return std::sqrt(q[b][c1] * q[b][c2]) + std::sqrt(q[b + 1][c1] * q[b + 1][c2]);
  };
  CHECK(term(0, 1, 2) == 0.0);
  CHECK(term(0, 0, 3) == 0.0);
  CHECK(term(2, 0, 2) == 0.0);
  CHECK(term(2, 1, 3) == 0.0);
}

TEST_CASE("sqrt_bell_value: displayed Q is NOT violated (lhs 2, rhs 2)") {
  const auto rep = tensorlab::sqrt_bell_value(tensorlab::displayed_q_matrix());
  CHECK(rep.lhs[0] == 2.0);
  CHECK(rep.rhs == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_FALSE(rep.violated(0));
  CHECK_FALSE(rep.violated(1));
}

TEST_CASE("sqrt_bell_value: uniform matrix has lhs 1, rhs 2") {
  const auto rep = tensorlab::sqrt_bell_value(tensorlab::uniform_matrix());
  CHECK(rep.lhs[0] == doctest::Approx(1.0));
  CHECK(rep.rhs == doctest::Approx(2.0));
  CHECK_FALSE(rep.any_violated());
}

TEST_CASE("sqrt_bell_value: invariant under the simultaneous 1<->3, 2<->4 relabeling") {
  Rng rng(8);
  auto relabel = [](const BoxMatrix& b) {
    const int perm[4] = {2, 3, 0, 1};
    std::array<std::array<double, 4>, 4> q;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) q[i][j] = b(perm[i], perm[j]);
    return BoxMatrix::from_entries(q);
  };
  for (const auto& b : {tensorlab::pr_matrix(), tensorlab::displayed_q_matrix(),
                        tensorlab::uniform_matrix()}) {
    const auto rep = tensorlab::sqrt_bell_value(b);
    const auto rep2 = tensorlab::sqrt_bell_value(relabel(b));
    CHECK(rep.rhs == doctest::Approx(rep2.rhs).epsilon(1e-12));
    CHECK(rep.lhs[0] == doctest::Approx(rep2.lhs[1]).epsilon(1e-12));
    CHECK(rep.lhs[1] == doctest::Approx(rep2.lhs[0]).epsilon(1e-12));
    CHECK(rep.any_violated() == rep2.any_violated());
  }
  for (int t = 0; t < 30; ++t) {
    const FactorWitness w = random_witness(rng, 2);
    const BoxMatrix b = tensorlab::max_cone_construct(w);
    const auto rep = tensorlab::sqrt_bell_value(b);
    const auto rep2 = tensorlab::sqrt_bell_value(relabel(b));
    CHECK(rep.rhs == doctest::Approx(rep2.rhs).epsilon(1e-10));
    CHECK(rep.any_violated() == rep2.any_violated());
  }
}

TEST_CASE("sqrt_bell_value and min_cone_member: scaling invariance") {
  Rng rng(14);
  for (int t = 0; t < 20; ++t) {
    const FactorWitness w = random_witness(rng, 2);
    const BoxMatrix b = tensorlab::max_cone_construct(w);
    const double s = rng.uniform(0.1, 5.0);
    const BoxMatrix sb = b.scaled(s);
    CHECK(tensorlab::min_cone_member(b, 1e-9) == tensorlab::min_cone_member(sb, 1e-9));
    CHECK(tensorlab::sqrt_bell_value(b).any_violated() ==
          tensorlab::sqrt_bell_value(sb).any_violated());
  }
}

TEST_CASE("max_cone_construct: scalar witnesses give product boxes") {
  auto scalar = [](double v) {
    HermMatrix m(1);
    m.set(0, 0, v);
    return m;
  };
  // X = (1,0,1,0), Y = (1,0,1,0): deterministic product box.
  const FactorWitness w = FactorWitness::make(
      {scalar(1), scalar(0), scalar(1), scalar(0)},
      {scalar(1), scalar(0), scalar(1), scalar(0)});
  const BoxMatrix b = tensorlab::max_cone_construct(w);
  CHECK(b(0, 0) == doctest::Approx(1.0));
  CHECK(b(0, 2) == doctest::Approx(1.0));
  CHECK(b(2, 2) == doctest::Approx(1.0));
  CHECK(b(1, 1) == doctest::Approx(0.0));

  // X = Y = (1/2,1/2,1/2,1/2): the all-1/4 matrix.
  const FactorWitness u = FactorWitness::make(
      {scalar(.5), scalar(.5), scalar(.5), scalar(.5)},
      {scalar(.5), scalar(.5), scalar(.5), scalar(.5)});
  const BoxMatrix bu = tensorlab::max_cone_construct(u);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(bu(i, j) == doctest::Approx(0.25));
}

TEST_CASE("max_cone_construct: X = Y = (E11, E22, E11, E22) reproduces displayed Q") {
  const HermMatrix e11 = HermMatrix::diagonal({1.0, 0.0});
  const HermMatrix e22 = HermMatrix::diagonal({0.0, 1.0});
  const FactorWitness w =
      FactorWitness::make({e11, e22, e11, e22}, {e11, e22, e11, e22});
  const BoxMatrix b = tensorlab::max_cone_construct(w);
  const BoxMatrix q = tensorlab::displayed_q_matrix();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(b(i, j) == doctest::Approx(q(i, j)));

  // This places displayed Q in the max cone, so the inequality must not
  // reject it. Tight: Tr(X1+X2) = 2 = rhs.
  CHECK(tensorlab::trace_inequality_check(w));
}

TEST_CASE("max_cone_construct output always passes min_cone_member (200 trials)") {
  Rng rng(19);
  for (int t = 0; t < 200; ++t) {
    const int p = 1 + static_cast<int>(rng.uniform() * 3);
    const FactorWitness w = random_witness(rng, p);
    CHECK(tensorlab::min_cone_member(tensorlab::max_cone_construct(w), 1e-9));
  }
}

TEST_CASE("trace_inequality_check: 500 random witnesses, p <= 3") {
  Rng rng(99);
  for (int t = 0; t < 500; ++t) {
    const int p = 1 + static_cast<int>(rng.uniform() * 3);
    const FactorWitness w = random_witness(rng, p);
    CHECK(tensorlab::trace_inequality_check(w, 1e-9));
  }
}

TEST_CASE("max_cone_search: deterministic box at p = 1") {
  // Deterministic box (f,g) with f = (0,1), g = (1,0) in matrix form.
  std::array<std::array<double, 4>, 4> q{};
  const int r[4] = {1, 0, 0, 1};  // x-side indicators for f(0)=0, f(1)=1
  const int s[4] = {0, 1, 1, 0};  // y-side indicators for g(0)=1, g(1)=0
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) q[i][j] = r[i] * s[j];
  const auto res = tensorlab::max_cone_search(BoxMatrix::from_entries(q), 1, 50, 0);
  REQUIRE(res.found);
  CHECK(res.reconstruction_error <= 1e-6);
  CHECK(tensorlab::max_cone_construct(*res.witness).frobenius_distance(
            BoxMatrix::from_entries(q)) <= 1e-6);
}

TEST_CASE("max_cone_search: displayed Q found at p = 2") {
  const auto res =
      tensorlab::max_cone_search(tensorlab::displayed_q_matrix(), 2, 50, 0);
  REQUIRE(res.found);
  CHECK(res.reconstruction_error <= 1e-6);
}

TEST_CASE("max_cone_search: PR matrix not found, certified by the inequality") {
  for (int p = 1; p <= 4; ++p) {
    const auto res = tensorlab::max_cone_search(tensorlab::pr_matrix(), p, 100, 0);
    CHECK_FALSE(res.found);
  }
  CHECK(tensorlab::sqrt_bell_value(tensorlab::pr_matrix()).any_violated());
}

TEST_CASE("max_cone_search: scaling invariance of success") {
  const BoxMatrix q2 = tensorlab::displayed_q_matrix().scaled(2.5);
  const auto res = tensorlab::max_cone_search(q2, 2, 50, 0);
  CHECK(res.found);
}

TEST_CASE("torus_min_eig: constants and scalar cosine") {
  tensorlab::MatTrigPoly c(1, 2);
  c.set_coeff(0, 0, GeneralMatrix::identity(2));
  CHECK(tensorlab::torus_min_eig(c, 64).min_value == doctest::Approx(1.0));

  // 1 + z + conj(z) = 1 + 2 cos(theta), minimized at z = -1 with value -1.
  tensorlab::MatTrigPoly s(1, 1);
  s.set_coeff(0, 0, GeneralMatrix::identity(1));
  s.set_coeff(1, 0, GeneralMatrix::identity(1));
  const auto res = tensorlab::torus_min_eig(s, 360);
  CHECK(res.min_value == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(res.argmin_z.real() == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("torus_min_eig: separation element is bounded below by 3 - 2 sqrt(2)") {
  const auto h = tensorlab::separation_element();
  const double bound = 3.0 - 2.0 * std::sqrt(2.0);
  double prev_gap = 1e300;
  for (const int n : {90, 360, 1440}) {
    const auto res = tensorlab::torus_min_eig(h, n);
    CHECK(res.min_value >= bound - 1e-9);
    const double gap = res.min_value - bound;
    CHECK(gap <= prev_gap + 1e-12);
    prev_gap = gap;
    CHECK(gap <= 1e-4);
  }
}

TEST_CASE("s1_max_split: examples") {
  // t0 = 2I, t1 = I: feasible with the split (I, I).
  const auto rep1 = tensorlab::s1_max_split(HermMatrix::identity(2) * 2.0,
                                            GeneralMatrix::identity(2), 0.0);
  CHECK(rep1.status == SolveStatus::feasible);

  // t0 = I, t1 = I: no split exists.
  const auto rep2 = tensorlab::s1_max_split(HermMatrix::identity(2),
                                            GeneralMatrix::identity(2), 0.0);
  CHECK(rep2.status == SolveStatus::infeasible_evidence);

  // Scalar t0 = 1, t1 = 1/2: feasible with (1/2, 1/2).
  GeneralMatrix half(1, 1);
  half(0, 0) = 0.5;
  const auto rep3 =
      tensorlab::s1_max_split(HermMatrix::identity(1), half, 0.0, 1e-6, 100000);
  CHECK(rep3.status == SolveStatus::feasible);
}

TEST_CASE("s1_max_split: agreement with the numerical-radius criterion") {
  // 1 (x) t0 + z (x) t1 + conj(z) (x) t1^* with t0 = I is max-positive iff
  // w(t1) <= 1/2 (after normalization), mirroring the Ando equivalence.
  Rng rng(41);
  int done = 0;
  while (done < 25) {
    const int d = 1 + static_cast<int>(rng.uniform() * 3);
    GeneralMatrix t1 = random_general(rng, d, d);
    const double target = rng.uniform(0.2, 0.8);
    t1 = t1 * Complex(target / numerics::numerical_radius(t1), 0.0);
    const double w = numerics::numerical_radius(t1);
    if (std::abs(w - 0.5) < 1e-3) continue;
    ++done;
    const auto rep =
        tensorlab::s1_max_split(HermMatrix::identity(d), t1, 0.0, 1e-8, 60000);
    if (w <= 0.5)
      CHECK(rep.status == SolveStatus::feasible);
    else
      CHECK(rep.status == SolveStatus::infeasible_evidence);
  }
}

TEST_CASE("sone_obstruction: vertex value, argmax, exhaustive grid") {
  const auto rep = tensorlab::sone_obstruction(100, 0.01);
  CHECK(rep.parabola_max == -0.75);
  CHECK(rep.parabola_argmax == 3.5);
  CHECK(rep.grid_psd_hits == 0);
  CHECK(rep.worst_lambda_min < 0.0);
  CHECK(rep.certified);

  CHECK_FALSE(numerics::is_psd(tensorlab::sone_averaged_matrix(1.5, 1.5), 1e-9));
}

TEST_CASE("sone_relaxation: single point is feasible, five 5th roots are not") {
  const auto single = tensorlab::sone_relaxation({Complex(1.0, 0.0)});
  const auto rep1 = convex::solve_feasibility(single, 1e-8, 30000);
  CHECK(rep1.status == SolveStatus::feasible);

  const auto five = tensorlab::sone_relaxation(tensorlab::roots_of_unity(5));
  const auto rep5 = convex::solve_feasibility(five, 1e-8, 50000);
  CHECK(rep5.status == SolveStatus::infeasible_evidence);
  CHECK(rep5.gap_estimate > 1e-4);

  const auto ten = tensorlab::sone_relaxation(tensorlab::roots_of_unity(10));
  const auto rep10 = convex::solve_feasibility(ten, 1e-8, 50000);
  CHECK(rep10.status == SolveStatus::infeasible_evidence);
}

TEST_CASE("sone_relaxation: dykstra gap stabilizes above 10 tol on 5 roots") {
  const auto five = tensorlab::sone_relaxation(tensorlab::roots_of_unity(5));
  convex::DykstraState st(five);
  for (int i = 0; i < 3000; ++i) st.step();
  const double g1 = st.gap();
  for (int i = 0; i < 1000; ++i) st.step();
  const double g2 = st.gap();
  CHECK(g1 > 10.0 * 1e-8);
  CHECK(std::abs(g2 - g1) <= 1e-2 * g1);
}

TEST_CASE("max_cone_search: balanced matrix with negative entries is never found") {
  const auto b = BoxMatrix::from_entries(
      {{{1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 1.5, -0.5}, {0, 1, -0.5, 1.5}}});
  CHECK_FALSE(tensorlab::min_cone_member(b, 1e-9));
  const auto res = tensorlab::max_cone_search(b, 2, 10, 0);
  CHECK_FALSE(res.found);
}

TEST_CASE("s1_max_split: a feasible split forces circle positivity") {
  // Max-positivity implies min-positivity: when the split exists, the
  // matrix function t0 + t1 z + t1* conj(z) is PSD on the whole circle.
  Rng rng(83);
  for (int t = 0; t < 10; ++t) {
    const int d = 1 + static_cast<int>(rng.uniform() * 2);
    GeneralMatrix t1 = random_general(rng, d, d);
    t1 = t1 * Complex(rng.uniform(0.2, 0.45) / numerics::numerical_radius(t1), 0.0);
    const auto rep =
        tensorlab::s1_max_split(HermMatrix::identity(d), t1, 0.0, 1e-8, 60000);
    REQUIRE(rep.status == SolveStatus::feasible);

    tensorlab::MatTrigPoly f(1, d);
    f.set_coeff(0, 0, GeneralMatrix::identity(d));
    f.set_coeff(1, 0, t1);
    CHECK(tensorlab::torus_min_eig(f, 720).min_value >= -1e-8);
  }
}
