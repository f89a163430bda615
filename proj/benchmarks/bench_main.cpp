#include <benchmark/benchmark.h>

#include "lstc/bounds.hpp"
#include "lstc/invariants.hpp"
#include "lstc/rings.hpp"

using namespace lstc;

static void BM_GrassmannRing(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(grassmann_ring(2, n, FieldTag::GF2).dim());
}
BENCHMARK(BM_GrassmannRing)->Arg(4)->Arg(5)->Arg(6);

static void BM_ZclXg(benchmark::State& state) {
  const GradedAlgebra ring = xg_ring(1, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(zero_divisor_cup_length(ring).length);
}
BENCHMARK(BM_ZclXg)->Arg(3)->Arg(4);

static void BM_EvaluateKleinTC(benchmark::State& state) {
  const SpaceExpr e = parse_space_expr("K(" + std::to_string(state.range(0)) + ")");
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(e, Invariant::TC).lower);
}
BENCHMARK(BM_EvaluateKleinTC)->Arg(4)->Arg(8);
BENCHMARK_MAIN();
