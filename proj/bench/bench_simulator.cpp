// Serial reference kernel vs OpenMP kernel, and the closed-form evaluators.
#include <vector>

#include <benchmark/benchmark.h>

#include "underlay/analytics.hpp"
#include "underlay/optimizer.hpp"
#include "underlay/simulator.hpp"

namespace {

using namespace underlay;

Scenario bench_scenario(int users) {
  Scenario sc;
  sc.stats = channel_stats_from_geometry({1, 1, 3, 3, 3, 3, 3});
  sc.users1 = sc.users2 = users;
  sc.ip_db = 20;
  return sc;
}

const std::vector<double> kThresholds = {1.0, 3.0, 7.0, 15.0, 31.0};

void BM_TallySerial(benchmark::State& state) {
  const auto sc = bench_scenario(static_cast<int>(state.range(0)));
  const auto trials = static_cast<std::uint64_t>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tally_outages_serial(sc, PowerPolicy::concurrent(0.5), kThresholds, 0, trials, 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_TallyOpenMP(benchmark::State& state) {
  const auto sc = bench_scenario(static_cast<int>(state.range(0)));
  const auto trials = static_cast<std::uint64_t>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tally_outages(sc, PowerPolicy::concurrent(0.5), kThresholds, 0, trials, 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

BENCHMARK(BM_TallySerial)->Args({1, 100000})->Args({10, 100000})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TallyOpenMP)->Args({1, 100000})->Args({10, 100000})->Unit(benchmark::kMillisecond);

void BM_OutageExact(benchmark::State& state) {
  OutageParams p{static_cast<int>(state.range(0)), 8.0, 27.0, 27.0, 27.0, 0.5, 1.0, 100.0};
  for (auto _ : state) benchmark::DoNotOptimize(outage_exact(p));
}
BENCHMARK(BM_OutageExact)->Arg(1)->Arg(10)->Arg(25);

void BM_AlphaStarNumeric(benchmark::State& state) {
  const auto sc = bench_scenario(5);
  for (auto _ : state) benchmark::DoNotOptimize(alpha_star_numeric(sc, RatePolicy(2.0)));
}
BENCHMARK(BM_AlphaStarNumeric)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
