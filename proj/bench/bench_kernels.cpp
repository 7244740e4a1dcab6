// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "support/oracles.hpp"
#include "vbcert/linalg.hpp"
#include "vbcert/oracle.hpp"

using namespace vbcert;

namespace {

Matrix<Rational> sample(std::size_t n) {
  testsupport::Rng rng(42 + n);
  return testsupport::random_matrix(rng, n, n);
}

void BM_compound_parallel(benchmark::State& state) {
  const auto x = sample(static_cast<std::size_t>(state.range(0)));
  const int r = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(compound(x, r));
}

void BM_compound_reference(benchmark::State& state) {
  const auto x = sample(static_cast<std::size_t>(state.range(0)));
  const int r = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(compound_reference(x, r));
}

const Matrix<double> kA{{0.7, 0.6, -2}, {0.15, 0.15, -0.25}, {0, 0.03, 0.1}};
const std::vector<double> kC{1.1, 0.1, -5.5};

void BM_oracle_parallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(falsify_operator_vb(kA, kC, 2, 50, 2000, 7, true));
}

void BM_oracle_serial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(falsify_operator_vb(kA, kC, 2, 50, 2000, 7, false));
}

}  // namespace

BENCHMARK(BM_compound_parallel)->Args({6, 3})->Args({8, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_compound_reference)->Args({6, 3})->Args({8, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_oracle_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_oracle_serial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
