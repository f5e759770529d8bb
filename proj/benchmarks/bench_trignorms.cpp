#include <benchmark/benchmark.h>

#include "roughcert/trignorms.hpp"

using namespace roughcert;

static void BM_LpNorm(benchmark::State& state) {
  const auto rs = trignorms::from_signs(trignorms::rudin_shapiro(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(trignorms::lp_norm(rs, 4.0, 16));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LpNorm)->RangeMultiplier(4)->Range(64, 1 << 14)->Complexity();

static void BM_SupNorm(benchmark::State& state) {
  const auto rs = trignorms::from_signs(trignorms::rudin_shapiro(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(trignorms::sup_norm(rs, 16));
}
BENCHMARK(BM_SupNorm)->Arg(1 << 10)->Arg(1 << 14);

// Every length 1..n_max in one pass.
static void BM_RudinShapiroSweep(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(trignorms::rudin_shapiro_sup_sweep(static_cast<int>(state.range(0)), 16));
}
BENCHMARK(BM_RudinShapiroSweep)->Arg(1 << 10)->Arg(1 << 14)->Unit(benchmark::kMillisecond);
