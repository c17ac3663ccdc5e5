#include <benchmark/benchmark.h>

#include "mktmem/analytics.hpp"
#include "mktmem/constructions.hpp"
#include "mktmem/oracle.hpp"
#include "mktmem/strategy.hpp"

namespace {

using namespace mktmem;

void BM_ContextWeightsFeedoff(benchmark::State& state) {
  FeedoffParams params;
  params.m = 2;
  params.m_prime = static_cast<std::size_t>(state.range(0));
  const auto p = feedoff_pattern(params);
  for (auto _ : state) benchmark::DoNotOptimize(context_weights(p, params.m_prime));
}
BENCHMARK(BM_ContextWeightsFeedoff)->DenseRange(3, 5);

void BM_BruteForceParity(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto p = parity_pattern(m);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_optimal_gain(p, m + 1));
}
BENCHMARK(BM_BruteForceParity)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_FeedoffReport(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(feedoff_report(FeedoffParams{}));
}
BENCHMARK(BM_FeedoffReport)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  SweepConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(sweep(config, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
