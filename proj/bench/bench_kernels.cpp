// Serial reference versus the OpenMP kernels.

#include <benchmark/benchmark.h>

#include <omp.h>

#include "egyptsum/serial_reference.hpp"
#include "egyptsum/sumset.hpp"

using namespace egyptsum;

namespace {

SumSpec<Rationals> units(std::size_t n) { return SumSpec<Rationals>::repeat(unit_fractions(), n); }

SumSpec<Rationals> mixed() {
  const auto U = unit_fractions();
  return SumSpec<Rationals>({U, U, negate(U)});
}

// args: arity, resolution
void BM_NetSerial(benchmark::State& state) {
  const auto padded = units(state.range(0)).padded_truncations(static_cast<unsigned>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::naive_padded_sums<Rationals>(padded));
}

void BM_NetParallel(benchmark::State& state) {
  const auto padded = units(state.range(0)).padded_truncations(static_cast<unsigned>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::build_padded_sums<Rationals>(padded));
  state.counters["threads"] = omp_get_max_threads();
}

void BM_CountSerial(benchmark::State& state) {
  const auto spec = mixed();
  const auto truncs = spec.truncations(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::naive_count<Rationals>(truncs, Rational(1, 2)));
}

void BM_CountProduct(benchmark::State& state) {
  const auto spec = mixed();
  const auto truncs = spec.truncations(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::count_product<Rationals>(truncs, Rational(1, 2)));
}

void BM_CountPositive(benchmark::State& state) {
  const auto spec = units(3);
  const auto truncs = spec.truncations(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::count_positive<Rationals>(truncs, Rational(1)));
}

void BM_CountPositiveSerial(benchmark::State& state) {
  const auto spec = units(3);
  const auto truncs = spec.truncations(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::naive_count<Rationals>(truncs, Rational(1)));
}

}  // namespace

BENCHMARK(BM_NetSerial)->Args({2, 6})->Args({2, 8})->Args({3, 5})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NetParallel)->Args({2, 6})->Args({2, 8})->Args({3, 5})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountSerial)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountProduct)->Arg(4)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountPositiveSerial)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountPositive)->Arg(4)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
