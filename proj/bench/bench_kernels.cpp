// Serial references against the OpenMP kernels they validate.

#include <benchmark/benchmark.h>

#include "randnet/ensemble.hpp"
#include "randnet/exactprob.hpp"
#include "randnet/oracles.hpp"

using namespace randnet;

namespace {

void bm_monte_carlo_serial(benchmark::State& state) {
  const auto samples = static_cast<std::uint64_t>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_pc_monte_carlo_serial(static_cast<int>(state.range(0)), 0.5, samples, 7));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * samples));
}

void bm_monte_carlo_parallel(benchmark::State& state) {
  const auto samples = static_cast<std::uint64_t>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_pc_monte_carlo(static_cast<int>(state.range(0)), 0.5, samples, 7));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * samples));
}

void bm_counts_serial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(strongly_connected_counts_serial(static_cast<int>(state.range(0))));
}

void bm_counts_parallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(strongly_connected_counts_parallel(static_cast<int>(state.range(0))));
}

void bm_static_serial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GraphEnsemble ensemble = exhaustive_ensemble(n, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(static_average_serial(ensemble, 10));
}

void bm_static_evolver(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GraphEnsemble ensemble = exhaustive_ensemble(n, 0.5);
  for (auto _ : state) {
    StaticEvolver evolver(n, {ensemble});
    for (int r = 0; r < 10; ++r) evolver.step();
    benchmark::DoNotOptimize(evolver.average(0));
  }
}

void bm_pc_exact(benchmark::State& state) {
  for (auto _ : state) {
    ExactSession session(mpq_class(1, 2));
    benchmark::DoNotOptimize(session.strongly_connected(static_cast<int>(state.range(0))));
  }
}

void bm_pc_float(benchmark::State& state) {
  for (auto _ : state) {
    FloatSession session(0.5);
    benchmark::DoNotOptimize(session.strongly_connected(static_cast<int>(state.range(0))));
  }
}

}  // namespace

BENCHMARK(bm_monte_carlo_serial)->Args({7, 1 << 20})->Args({30, 1 << 18})->Unit(benchmark::kMillisecond);
BENCHMARK(bm_monte_carlo_parallel)->Args({7, 1 << 20})->Args({30, 1 << 18})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bm_counts_serial)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_counts_parallel)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bm_static_serial)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_static_evolver)->Arg(3)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bm_pc_exact)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_pc_float)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
