#include <benchmark/benchmark.h>

#include "kfree/dioph.hpp"

using namespace kfree;

static void BM_CountN(benchmark::State& state) {
  const long side = static_cast<long>(state.range(0));
  const Box box{side, side, 1'000'000, 2, 1};
  for (auto _ : state) benchmark::DoNotOptimize(count_N(box));
}
BENCHMARK(BM_CountN)->RangeMultiplier(4)->Range(4, 512);

static void BM_Enumerate(benchmark::State& state) {
  const Box box{16, 64, static_cast<u64>(state.range(0)), 2, -1};
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_solutions(box).size());
}
BENCHMARK(BM_Enumerate)->RangeMultiplier(10)->Range(10'000, 1'000'000);

static void BM_InclusionExclusion(benchmark::State& state) {
  const u64 Z = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(inclusion_exclusion_Astar(Z, 2));
}
BENCHMARK(BM_InclusionExclusion)->RangeMultiplier(10)->Range(1'000, 1'000'000)->Unit(benchmark::kMillisecond);
