#include <benchmark/benchmark.h>

#include "kspave/generators.hpp"
#include "kspave/harmonic.hpp"
#include "kspave/linalg.hpp"

using namespace kspave;

static void BM_OpNormHermitian(benchmark::State& state) {
  const Matrix h = gen::hermitian(static_cast<std::size_t>(state.range(0)), 7, Field::complex);
  for (auto _ : state) benchmark::DoNotOptimize(op_norm(h));
}
BENCHMARK(BM_OpNormHermitian)->RangeMultiplier(2)->Range(8, 128);

static void BM_OpNormGeneral(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix m = gen::hermitian(n, 7) + gen::hermitian(n, 8) * Complex(0.0, 0.5) +
                   Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) * Complex(0.3, 0.0);
  const Matrix g = m * m.transpose();
  for (auto _ : state) benchmark::DoNotOptimize(op_norm(g));
}
BENCHMARK(BM_OpNormGeneral)->RangeMultiplier(2)->Range(8, 64);

static void BM_FourierGram(benchmark::State& state) {
  const IntervalSet e({{0.0, 0.25}, {0.4, 0.55}, {0.7, 0.9}});
  const FreqWindow w(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fourier_gram(e, w));
}
BENCHMARK(BM_FourierGram)->RangeMultiplier(4)->Range(8, 512);

static void BM_ChiHat(benchmark::State& state) {
  const IntervalSet e({{0.0, 0.25}, {0.4, 0.55}, {0.7, 0.9}});
  std::int64_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(chi_hat(e, ++k));
}
BENCHMARK(BM_ChiHat);

BENCHMARK_MAIN();
