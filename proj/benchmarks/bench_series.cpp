#include <benchmark/benchmark.h>

#include <random>

#include "slopegap/generate.hpp"
#include "slopegap/pipeline.hpp"
#include "slopegap/polyannulus.hpp"
#include "slopegap/slope_split.hpp"

using namespace slopegap;

namespace {

const RingShape kShape{5, 2, 1};

LaurentSeries random_poly(std::mt19937_64& rng, int terms, int radius, int precision) {
  std::uniform_int_distribution<int> deg(-radius, radius);
  std::uniform_int_distribution<int> disk(0, radius);
  std::uniform_int_distribution<std::int64_t> coeff(1, 1'000'000);
  LaurentSeries::Terms t;
  for (int k = 0; k < terms; ++k)
    t[Exponent{deg(rng), deg(rng), disk(rng), 0}] = PadicScalar::from_integer(5, coeff(rng), precision);
  return LaurentSeries::from_terms(kShape, precision, t);
}

void BM_Multiply(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const int terms = static_cast<int>(state.range(0));
  const auto x = random_poly(rng, terms, 8, 10);
  const auto y = random_poly(rng, terms, 8, 10);
  for (auto _ : state) benchmark::DoNotOptimize(x * y);
  state.SetComplexityN(terms);
}
BENCHMARK(BM_Multiply)->RangeMultiplier(4)->Range(4, 256)->Complexity();

void BM_Frobenius(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto x = random_poly(rng, 64, 8, 10);
  for (auto _ : state) benchmark::DoNotOptimize(frobenius_power(1, x));
}
BENCHMARK(BM_Frobenius);

void BM_Primitive(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto x = truncate_below(0, random_poly(rng, 64, 8, 10));
  for (auto _ : state) benchmark::DoNotOptimize(primitive(0, x));
}
BENCHMARK(BM_Primitive);

void BM_InvertUnit(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const auto u = LaurentSeries::integer(kShape, 10, 1) + random_poly(rng, 8, 2, 10).scale_by_p_power(1);
  for (auto _ : state) benchmark::DoNotOptimize(invert_unit(u, Window::box(kShape, 24)));
}
BENCHMARK(BM_InvertUnit);

SigmaNablaModule instance(int rank) {
  SplitInstanceSpec spec;
  spec.shape = RingShape{5, 1, 0};
  spec.rank = rank;
  return generate_split_instance(spec, 3);
}

void BM_UnitRootSplit(benchmark::State& state) {
  const auto m = instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(unit_root_split(m, Rational(2)));
}
BENCHMARK(BM_UnitRootSplit)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Pipeline(benchmark::State& state) {
  const auto m = instance(2);
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(m, {}));
}
BENCHMARK(BM_Pipeline)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
