#include <benchmark/benchmark.h>

#include "tamagawa/scan.hpp"

using namespace tamagawa;

static void BM_Tate11a1(benchmark::State& state) {
  const WeierstrassCurve e(0, -1, 1, -10, -20);
  for (auto _ : state) benchmark::DoNotOptimize(tate(e, 11));
}
BENCHMARK(BM_Tate11a1);

static void BM_GlobalTamagawaTwoSix(benchmark::State& state) {
  const WeierstrassCurve e = two_six_curve(make_rational(29, 30));
  for (auto _ : state) benchmark::DoNotOptimize(global_tamagawa(e));
}
BENCHMARK(BM_GlobalTamagawaTwoSix);

static void BM_MinimalModel(benchmark::State& state) {
  const WeierstrassCurve e(0, 0, 0, -13392, -1080432);
  for (auto _ : state) benchmark::DoNotOptimize(minimal_model(e));
}
BENCHMARK(BM_MinimalModel);

static void BM_Torsion(benchmark::State& state) {
  const WeierstrassCurve e(1, 0, 1, -19, 26);
  for (auto _ : state) benchmark::DoNotOptimize(torsion_subgroup(e));
}
BENCHMARK(BM_Torsion);

static void BM_Factor(benchmark::State& state) {
  const Integer n = Integer("1000000000039") * Integer("1000000000061");
  for (auto _ : state) benchmark::DoNotOptimize(factor(n));
}
BENCHMARK(BM_Factor);

static void BM_Hadano(benchmark::State& state) {
  const auto nf = ThreeTorsionNormalForm::make(state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(hadano_quotient(nf));
}
BENCHMARK(BM_Hadano)->Arg(2)->Arg(97);

static void BM_ScanKozuma(benchmark::State& state) {
  ScanOptions o;
  o.jobs = 1;
  o.bound = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(run_preset("kozuma", o));
}
BENCHMARK(BM_ScanKozuma)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
