#include <benchmark/benchmark.h>

#include <cmath>

#include "roughcert/construction.hpp"
#include "roughcert/estimates.hpp"
#include "roughcert/logkernel.hpp"

using namespace roughcert;

static void BM_ArcLogIntegral(benchmark::State& state) {
  const auto method = static_cast<logkernel::Method>(state.range(0));
  const auto arc = circle::make_arc(circle::Angle::radians(2.0), 0.05);
  const auto xi = circle::Angle::radians(0.4292);
  for (auto _ : state) benchmark::DoNotOptimize(logkernel::arc_log_integral(arc, xi, method));
  state.SetLabel(logkernel::to_string(method));
}
BENCHMARK(BM_ArcLogIntegral)
    ->Arg(static_cast<int>(logkernel::Method::closed_form))
    ->Arg(static_cast<int>(logkernel::Method::quadrature))
    ->Arg(static_cast<int>(logkernel::Method::series));

static void BM_Construction(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(circle::build_construction({std::ldexp(1.0, 64), n}));
}
BENCHMARK(BM_Construction)->Arg(8)->Arg(32)->Unit(benchmark::kMicrosecond);

// Full-circle profile of Omega_n, grid 8192.
static void BM_Profile(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto cons = circle::build_construction({std::ldexp(1.0, 2 * n), n});
  for (auto _ : state) benchmark::DoNotOptimize(logkernel::profile(cons, 8192));
}
BENCHMARK(BM_Profile)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_DDelta(benchmark::State& state) {
  const auto cons = circle::build_construction({std::ldexp(1.0, 64), 32});
  for (auto _ : state) benchmark::DoNotOptimize(logkernel::d_delta(cons));
}
BENCHMARK(BM_DDelta)->Unit(benchmark::kMillisecond);
