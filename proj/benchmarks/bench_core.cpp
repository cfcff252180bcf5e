#include <benchmark/benchmark.h>

#include <random>

#include "nodal/ca.hpp"
#include "nodal/chronoclust.hpp"
#include "nodal/linalg.hpp"

namespace {

nodal::Matrix random_matrix(std::size_t rows, std::size_t cols, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  nodal::Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = g(rng);
  return m;
}

// Sparse word counts shaped like a ballad corpus: short rows, long tail.
nodal::ContingencyMatrix random_table(std::size_t rows, std::size_t cols, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::geometric_distribution<std::size_t> word(0.01);
  std::vector<std::int64_t> counts(rows * cols, 0);
  for (std::size_t i = 0; i < rows; ++i)
    for (int t = 0; t < 25; ++t) ++counts[i * cols + word(rng) % cols];
  for (std::size_t j = 0; j < cols; ++j) ++counts[(j % rows) * cols + j];
  return nodal::ContingencyMatrix(rows, cols, std::move(counts));
}

void BM_Svd(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const nodal::Matrix a = random_matrix(n, n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(nodal::svd(a));
}
BENCHMARK(BM_Svd)->Arg(10)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_AnalyzeSingleVariant(benchmark::State& state) {
  const auto table = random_table(31, 288, 5);
  for (auto _ : state) benchmark::DoNotOptimize(nodal::analyze(table));
}
BENCHMARK(BM_AnalyzeSingleVariant)->Unit(benchmark::kMillisecond);

void BM_AnalyzePooled(benchmark::State& state) {
  const auto table = random_table(219, 837, 7);
  for (auto _ : state) benchmark::DoNotOptimize(nodal::analyze(table));
}
BENCHMARK(BM_AnalyzePooled)->Unit(benchmark::kMillisecond);

void BM_Cluster(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const nodal::Matrix pts = random_matrix(n, 26, 11);
  for (auto _ : state) benchmark::DoNotOptimize(nodal::cluster(pts));
}
BENCHMARK(BM_Cluster)->Arg(40)->Arg(219)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
