#include <benchmark/benchmark.h>

#include "oscone/boxes.hpp"
#include "oscone/convex.hpp"
#include "oscone/numerics.hpp"
#include "oscone/opsys.hpp"
#include "oscone/rng.hpp"
#include "oscone/tensorlab.hpp"

using namespace oscone;
using numerics::GeneralMatrix;
using numerics::HermMatrix;

static void BM_Eigh(benchmark::State& state) {
  Rng rng(1);
  const HermMatrix m = random_hermitian(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto sp = numerics::eigh(m);
    benchmark::DoNotOptimize(sp.eigenvalues.data());
  }
}
BENCHMARK(BM_Eigh)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

static void BM_PsdProject(benchmark::State& state) {
  Rng rng(2);
  const HermMatrix m = random_hermitian(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto p = numerics::psd_project(m);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_PsdProject)->Arg(4)->Arg(10);

static void BM_NumericalRadius(benchmark::State& state) {
  Rng rng(3);
  const GeneralMatrix t = random_general(rng, static_cast<int>(state.range(0)),
                                         static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(numerics::numerical_radius(t));
}
BENCHMARK(BM_NumericalRadius)->Arg(2)->Arg(4);

static void BM_AndoSolve(benchmark::State& state) {
  Rng rng(4);
  const int d = static_cast<int>(state.range(0));
  GeneralMatrix t = random_general(rng, d, d);
  t = t * numerics::Complex(0.3 / numerics::numerical_radius(t), 0.0);
  for (auto _ : state) {
    convex::FeasibilityProblem p;
    const int m = p.add_psd_block("M", 2 * d, 0.0);
    p.add_subblock_constraint({{m, 0, 0, 1.0}, {m, d, d, 1.0}},
                              GeneralMatrix::identity(d));
    p.add_subblock_constraint({{m, 0, d, 1.0}}, t);
    benchmark::DoNotOptimize(convex::solve_feasibility(p, 1e-8, 50000));
  }
}
BENCHMARK(BM_AndoSolve)->Arg(2)->Arg(4);

static void BM_TorusScan(benchmark::State& state) {
  const auto h = tensorlab::separation_element();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        tensorlab::torus_min_eig(h, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_TorusScan)->Arg(90)->Arg(360);

static void BM_SqrtBell(benchmark::State& state) {
  const auto pr = tensorlab::pr_matrix();
  for (auto _ : state) benchmark::DoNotOptimize(tensorlab::sqrt_bell_value(pr));
}
BENCHMARK(BM_SqrtBell);

static void BM_HullMembership(benchmark::State& state) {
  convex::HullQuery q;
  for (const auto& v : boxes::deterministic_boxes()) {
    std::vector<double> vec;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int x = 0; x < 2; ++x)
          for (int y = 0; y < 2; ++y) vec.push_back(v(a, b, x, y));
    q.vertices.push_back(vec);
  }
  const boxes::Box pr = boxes::Box::pr();
  q.target.clear();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) q.target.push_back(pr(a, b, x, y));
  for (auto _ : state) benchmark::DoNotOptimize(convex::hull_membership(q));
}
BENCHMARK(BM_HullMembership);

static void BM_SeesawChsh(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        boxes::seesaw_maximize(boxes::chsh_functional(), 2, 1, 0));
}
BENCHMARK(BM_SeesawChsh);

BENCHMARK_MAIN();
