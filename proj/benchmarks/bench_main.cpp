#include <benchmark/benchmark.h>

#include "gasket/attractor.h"
#include "gasket/numtheory.h"
#include "gasket/symbolic.h"

using namespace gasket;

static void BM_BuildLevel(benchmark::State& state) {
  Parameter lambda = multinacci_parameter(2);
  for (auto _ : state) benchmark::DoNotOptimize(LevelTower::build(lambda, 2, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BuildLevel)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

static void BM_BuildLevelRational(benchmark::State& state) {
  Parameter lambda = Parameter::rational(Rational(59, 100));
  for (auto _ : state) benchmark::DoNotOptimize(LevelTower::build(lambda, 2, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BuildLevelRational)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

static void BM_ClassifyHoles(benchmark::State& state) {
  Parameter lambda = multinacci_parameter(2);
  int n = static_cast<int>(state.range(0));
  LevelTower tower = LevelTower::build(lambda, 2, n + 1);
  for (auto _ : state) benchmark::DoNotOptimize(classify_holes(tower, n));
}
BENCHMARK(BM_ClassifyHoles)->DenseRange(4, 7, 1)->Unit(benchmark::kMillisecond);

static void BM_EllUpper(benchmark::State& state) {
  Parameter theta = Parameter::algebraic(inverse_multinacci(2));
  for (auto _ : state) benchmark::DoNotOptimize(ell_upper(theta, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_EllUpper)->DenseRange(8, 14, 2)->Unit(benchmark::kMillisecond);

static void BM_SignAlgebraic(benchmark::State& state) {
  Parameter lambda = multinacci_parameter(3);
  // near-cancelling combination: forces the exact path
  LinearCombination c({-1, 1, 1, 1});
  LinearCombination d = c * LinearCombination({2, -1, 0, 3}) + LinearCombination::monomial(1, 40);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lambda.sign(c));
    benchmark::DoNotOptimize(lambda.sign(d));
  }
}
BENCHMARK(BM_SignAlgebraic);

static void BM_AreaEstimate(benchmark::State& state) {
  LevelSet level = build_level(multinacci_parameter(2), 2, 10);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_area(level, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_AreaEstimate)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

static void BM_UniqueCount(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(count_unique_addresses(3, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_UniqueCount)->Arg(100)->Arg(1000);
BENCHMARK_MAIN();
