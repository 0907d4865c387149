// Serial reference vs OpenMP early-exit kernel, plus the analytic paths.
//
//   bench_kernels --benchmark_filter=Cp

#include <benchmark/benchmark.h>

#include "ahdcov/analytic.hpp"
#include "ahdcov/montecarlo.hpp"
#include "ahdcov/sweep.hpp"

using namespace ahdcov;

namespace {

NetworkConfig mspm_config(double lambda_per_km2) {
  NetworkConfig cfg;
  cfg.model = PathlossModel({1.5, 3.0, 4.5}, {10.0, 50.0});
  cfg.lambda = per_km2_to_per_m2(lambda_per_km2);
  cfg.ahd = 4.5;
  return cfg;
}

void BM_CpReference(benchmark::State& state) {
  const auto cfg = mspm_config(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::estimate_cp(cfg, 2000, 1).mean);
  state.SetItemsProcessed(state.iterations() * 2000);
}
BENCHMARK(BM_CpReference)->Arg(100)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_CpParallel(benchmark::State& state) {
  const auto cfg = mspm_config(static_cast<double>(state.range(0)));
  const McOptions opts{1.0, static_cast<int>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(estimate_cp(cfg, 2000, 1, opts).mean);
  state.SetItemsProcessed(state.iterations() * 2000);
}
BENCHMARK(BM_CpParallel)->Args({100, 1})->Args({10000, 1})->Args({10000, 0})->Unit(benchmark::kMillisecond);

void BM_AnalyticCp(benchmark::State& state) {
  NetworkConfig cfg = mspm_config(1000.0);
  if (state.range(0) == 1) cfg.model = PathlossModel::single_slope(4.0);
  if (state.range(0) == 2) cfg.model = PathlossModel::dual_slope(1.5, 4.0, 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(cp(cfg));
}
BENCHMARK(BM_AnalyticCp)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

void BM_AnalyticSweep(benchmark::State& state) {
  RunConfig rc;
  rc.network = mspm_config(1000.0);
  for (int i = 0; i < 61; ++i) rc.sweep.grid.push_back(10.0 * std::pow(10.0, i / 10.0));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(rc).size());
}
BENCHMARK(BM_AnalyticSweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
