#include <benchmark/benchmark.h>

#include "mhcount/chars.hpp"

using namespace mhcount;

static void BM_TableBuildPrime(benchmark::State& state) {
  const auto q = FactoredModulus::prime_power(10007, 1);
  for (auto _ : state) {
    auto table = build_character_table(q);
    benchmark::DoNotOptimize(table);
  }
}
BENCHMARK(BM_TableBuildPrime);

static void BM_TableBuildSquareFree(benchmark::State& state) {
  const auto q = FactoredModulus::square_free({3, 5, 7, 11, 13});
  for (auto _ : state) {
    auto table = build_character_table(q);
    benchmark::DoNotOptimize(table);
  }
}
BENCHMARK(BM_TableBuildSquareFree);

static void BM_CharacterEval(benchmark::State& state) {
  const auto table = build_character_table(FactoredModulus::square_free({3, 5, 7, 11, 13}));
  const Character chi = table->character_at(table->group_order() / 2 + 1);
  const int64_t q = table->modulus_value();
  int64_t x = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(chi(x));
    x = x % (q - 1) + 1;
  }
}
BENCHMARK(BM_CharacterEval);

static void BM_RootIndex(benchmark::State& state) {
  const auto table = build_character_table(FactoredModulus::prime_power(7, 5));
  const Character chi = table->generator();
  const int64_t q = table->modulus_value();
  int64_t x = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(chi.root_index(x));
    x = x % (q - 1) + 1;
  }
}
BENCHMARK(BM_RootIndex);
