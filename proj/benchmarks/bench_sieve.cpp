#include <benchmark/benchmark.h>

#include "kfree/constants.hpp"
#include "kfree/sieve.hpp"

using namespace kfree;

static void BM_ConsecutivePairs(benchmark::State& state) {
  const u64 Z = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_consecutive_kfree(Z, 2).count);
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * Z));
}
BENCHMARK(BM_ConsecutivePairs)->RangeMultiplier(10)->Range(1'000'000, 1'000'000'000)->Unit(benchmark::kMillisecond);

static void BM_SegmentSize(benchmark::State& state) {
  SieveOptions opt;
  opt.segment_size = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_consecutive_kfree(100'000'000, 2, opt).count);
}
BENCHMARK(BM_SegmentSize)->RangeMultiplier(4)->Range(1 << 16, 1 << 24)->Unit(benchmark::kMillisecond);

static void BM_CountStar(benchmark::State& state) {
  const unsigned k = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_star(10'000'000, k));
}
BENCHMARK(BM_CountStar)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_EulerProduct(benchmark::State& state) {
  const u64 P = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(euler_product_ck(2, P).width());
}
BENCHMARK(BM_EulerProduct)->RangeMultiplier(10)->Range(10'000, 1'000'000)->Unit(benchmark::kMillisecond);
