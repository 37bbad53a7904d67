#include <benchmark/benchmark.h>

#include <random>

#include "cbsheaf/ext.hpp"
#include "cbsheaf/linear.hpp"
#include "cbsheaf/profinite.hpp"

using namespace cbsheaf;

namespace {

RatMatrix random_matrix(std::size_t n, double fill, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> v(-5, 5);
  std::bernoulli_distribution keep(fill);
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (keep(rng)) m.set(i, j, Rational(v(rng)));
    }
  }
  return m;
}

SpacePtr star_power(std::size_t n, std::size_t leaves) {
  FiniteSpace s = star_space(leaves);
  for (std::size_t i = 1; i < n; ++i) s = product(s, star_space(leaves));
  return std::make_shared<const FiniteSpace>(std::move(s));
}

// Arg 0: size, arg 1: fill in percent.
void BM_RrefSparse(benchmark::State& state) {
  const RatMatrix m = random_matrix(state.range(0), state.range(1) / 100.0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(rref_sparse(m));
}
BENCHMARK(BM_RrefSparse)->Args({40, 5})->Args({40, 25})->Args({40, 60})->Args({80, 5});

void BM_RrefDense(benchmark::State& state) {
  const RatMatrix m = random_matrix(state.range(0), state.range(1) / 100.0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(rref_dense(m));
}
BENCHMARK(BM_RrefDense)->Args({40, 5})->Args({40, 25})->Args({40, 60})->Args({80, 5});

void BM_ResolveConstantOnStarPower(benchmark::State& state) {
  const SpacePtr s = star_power(state.range(0), 2);
  const SheafPtr cq = std::make_shared<const Sheaf>(constant_sheaf(s, 1));
  for (auto _ : state) benchmark::DoNotOptimize(build_resolution(cq, default_max_len(*s)));
}
BENCHMARK(BM_ResolveConstantOnStarPower)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_ExtAtTopPoint(benchmark::State& state) {
  const SpacePtr s = star_power(state.range(0), 2);
  const SheafPtr cq = std::make_shared<const Sheaf>(constant_sheaf(s, 1));
  for (auto _ : state) benchmark::DoNotOptimize(ext_groups(cq, 0, state.range(0) + 1));
}
BENCHMARK(BM_ExtAtTopPoint)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_CategoryDimension(benchmark::State& state) {
  const SpacePtr s = star_power(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(category_dimension(s));
}
BENCHMARK(BM_CategoryDimension)->Args({2, 2})->Args({3, 2})->Args({3, 3})->Unit(benchmark::kMillisecond);

void BM_RandomSheafScan(benchmark::State& state) {
  const SpacePtr s = star_power(2, 2);
  DimensionOptions o;
  o.random_sheaves = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(category_dimension(s, o));
}
BENCHMARK(BM_RandomSheafScan)->Arg(0)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ProductRank(benchmark::State& state) {
  const FiniteSpace a = *star_power(2, 3);
  const FiniteSpace b = *star_power(1, 4);
  for (auto _ : state) benchmark::DoNotOptimize(cb_rank(product(a, b)));
}
BENCHMARK(BM_ProductRank);

void BM_ParsePrint(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(print_expr(*parse_expr("(P^3 + D(4) * B) * (SProd(2) + F) + E")));
  }
}
BENCHMARK(BM_ParsePrint);

}  // namespace

BENCHMARK_MAIN();
