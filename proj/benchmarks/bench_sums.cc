#include <benchmark/benchmark.h>

#include "mhcount/chars.hpp"
#include "mhcount/expsums.hpp"

using namespace mhcount;

static void BM_GaussSum(benchmark::State& state) {
  const auto table = build_character_table(
      FactoredModulus::prime_power(state.range(0), 1));
  const Character chi = table->character_at(1);
  for (auto _ : state) benchmark::DoNotOptimize(gauss_sum(chi, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GaussSum)->Arg(1009)->Arg(10007);

static void BM_IncompleteMixedSum(benchmark::State& state) {
  const auto table = build_character_table(FactoredModulus::square_free({5, 7, 11}));
  const Character chi = table->character_at(3);
  const IntegerPolynomial f{1, 0, 2, 1};
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(incomplete_mixed_sum(chi, 2, f, 3, -50, 200000, workers));
  state.SetItemsProcessed(state.iterations() * 200000);
}
BENCHMARK(BM_IncompleteMixedSum)->Arg(1)->Arg(2)->Arg(4);

static void BM_RamanujanSweep(benchmark::State& state) {
  for (auto _ : state) {
    int64_t acc = 0;
    for (int64_t lambda = 1; lambda <= 1001; ++lambda)
      acc += ramanujan_sum(int64_t{1001}, lambda);  // 7 * 11 * 13
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * 1001);
}
BENCHMARK(BM_RamanujanSweep);
