#include <benchmark/benchmark.h>

#include "mhcount/counting.hpp"

using namespace mhcount;

namespace {

HypersurfaceSpec markoff() {
  HypersurfaceSpec s;
  for (int i = 0; i < 3; ++i) s.f_list.push_back(IntegerPolynomial{0, 0, 1});
  s.k_list = {1, 1, 1};
  s.a = 3;
  s.m = 1;
  return s;
}

}  // namespace

static void BM_CountFullEnumeration(benchmark::State& state) {
  const auto spec = markoff();
  const Box box = Box::diagonal(0, 3, state.range(0));
  const int workers = static_cast<int>(state.range(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        count_points(spec, box, CountMethod::FullEnumeration, kDefaultBudget, workers));
}
BENCHMARK(BM_CountFullEnumeration)->Args({60, 1})->Args({60, 4})->Args({100, 4});

static void BM_CountSolveLast(benchmark::State& state) {
  const auto spec = markoff();
  const Box box = Box::diagonal(0, 3, state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        count_points(spec, box, CountMethod::SolveLast, kDefaultBudget, 1));
}
BENCHMARK(BM_CountSolveLast)->Arg(60)->Arg(100);

static void BM_CountCongruence(benchmark::State& state) {
  const auto spec = markoff();
  const Box box = Box::diagonal(0, 3, 200);
  const auto q = FactoredModulus::square_free({3, 5, 7});
  for (auto _ : state) benchmark::DoNotOptimize(count_congruence(spec, box, q));
}
BENCHMARK(BM_CountCongruence);

static void BM_FourthMoment(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fourth_moment(101, 0, state.range(0)));
}
BENCHMARK(BM_FourthMoment)->Arg(50)->Arg(200);
