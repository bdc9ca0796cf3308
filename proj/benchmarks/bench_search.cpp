#include <benchmark/benchmark.h>

#include "kspave/generators.hpp"
#include "kspave/paving.hpp"
#include "kspave/search.hpp"

using namespace kspave;

static void BM_ExhaustiveMinBlocks(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix t = gen::selfadjoint_contraction(n, 1, 1.0, true);
  const BlockObjective obj = submatrix_objective(t);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exhaustive_min_blocks(obj, 0.6, kCertificateTol, n));
  }
}
BENCHMARK(BM_ExhaustiveMinBlocks)->DenseRange(6, 12, 3)->Unit(benchmark::kMillisecond);

static void BM_ExhaustiveMinMax(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const Frame u = gen::parseval(3, m, 2);
  const BlockObjective obj = outer_sum_objective(u.synthesis());
  for (auto _ : state) {
    benchmark::DoNotOptimize(exhaustive_min_max(obj, 2));
  }
}
BENCHMARK(BM_ExhaustiveMinMax)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_LocalSearch(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix t = gen::selfadjoint_contraction(n, 3, 1.0, true);
  const BlockObjective obj = submatrix_objective(t);
  SearchBudget budget{};
  budget.parallelism = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(local_search(obj, 4, 0.5, kCertificateTol, budget));
  }
}
BENCHMARK(BM_LocalSearch)->Args({24, 1})->Args({48, 1})->Args({48, 4})->Unit(benchmark::kMillisecond);

static void BM_WeaverEtaTight(benchmark::State& state) {
  const Frame u = gen::eta_tight(static_cast<std::size_t>(state.range(0)), 18, 5);
  const SearchBudget budget{};
  for (auto _ : state) {
    benchmark::DoNotOptimize(weaver_partition(u, 18.0, 2.0, budget));
  }
}
BENCHMARK(BM_WeaverEtaTight)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
