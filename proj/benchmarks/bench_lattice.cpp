#include <benchmark/benchmark.h>

#include <random>

#include "kfree/detmethod.hpp"
#include "kfree/lattice.hpp"

using namespace kfree;

static void BM_GaussReduce(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<ScaledLattice> lattices;
  for (int i = 0; i < 256; ++i) {
    const u64 M = 1 + rng() % 100000;
    lattices.push_back(make_lattice(IntervalSpec{M, 1 + rng() % (4 * M), 64}));
  }
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(gauss_reduce(lattices[i++ & 255]).L1);
}
BENCHMARK(BM_GaussReduce);

static void BM_Histogram(benchmark::State& state) {
  const u64 M = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(shortest_histogram(64, 64, M).intervals);
}
BENCHMARK(BM_Histogram)->RangeMultiplier(4)->Range(64, 4096)->Unit(benchmark::kMillisecond);

static void BM_Rank(benchmark::State& state) {
  const auto pool = enumerate_solutions(Box{8, 8, 100000, 2, 1});
  const auto basis = monomial_basis(static_cast<unsigned>(state.range(0)), 2);
  const auto m = evaluation_matrix(pool, basis);
  for (auto _ : state) benchmark::DoNotOptimize(rank_and_nullvector(m).rank);
}
BENCHMARK(BM_Rank)->DenseRange(1, 3);
