// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <limits>

#include "robrisk/radius.hpp"
#include "robrisk/relrisk.hpp"
#include "robrisk/simulate.hpp"

namespace {

using robrisk::Exec;

void BM_RunMse(benchmark::State& state, Exec exec) {
  robrisk::SimConfig cfg;
  cfg.c = 0.746;
  cfg.r = 0.5;
  cfg.n = 30;
  cfg.reps = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(robrisk::run_mse(cfg, exec).mse);
  state.SetItemsProcessed(state.iterations() * cfg.reps);
}

void BM_Envelope(benchmark::State& state, Exec exec) {
  const auto grid = robrisk::default_envelope_grid();
  for (auto _ : state) benchmark::DoNotOptimize(robrisk::envelope(0.1, grid, 200, exec).max);
}

void BM_MinimaxRadius(benchmark::State& state, Exec exec) {
  robrisk::RadiusOptions opt;
  opt.exec = exec;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        robrisk::minimax_radius_so(std::numeric_limits<double>::infinity(), robrisk::SampleSize::finite(30), opt)
            .r_star);
}

}  // namespace

BENCHMARK_CAPTURE(BM_RunMse, serial, Exec::serial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RunMse, parallel, Exec::parallel)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Envelope, serial, Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Envelope, parallel, Exec::parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_MinimaxRadius, serial, Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_MinimaxRadius, parallel, Exec::parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
