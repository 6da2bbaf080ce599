#include <benchmark/benchmark.h>

#include <random>

#include "glearn/graph.hpp"
#include "glearn/reconstruction.hpp"
#include "glearn/types.hpp"

namespace {

/// Random spanning tree plus extra edges, unit-scale weights.
glearn::Matrix random_graph(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(0.2, 1.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  glearn::Matrix adj = glearn::Matrix::Zero(n, n);
  for (int v = 1; v < n; ++v) {
    const int u = static_cast<int>(rng() % v);
    adj(u, v) = adj(v, u) = weight(rng);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng) < 0.1 && adj(i, j) == 0.0) adj(i, j) = adj(j, i) = weight(rng);
    }
  }
  return adj;
}

glearn::Matrix random_signals(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  glearn::Matrix x(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) x(i, j) = noise(rng);
  }
  return x;
}

void bm_denoise(benchmark::State& state) {
  const int n = 37;
  const int cols = static_cast<int>(state.range(0));
  glearn::SensorGraph graph;
  graph.adjacency = random_graph(n, 3);
  const glearn::Matrix lap = glearn::laplacian(graph);
  const glearn::Matrix noisy = random_signals(n, cols, 5);
  for (auto _ : state) {
    auto restored = glearn::denoise(noisy, lap, 1.0);
    benchmark::DoNotOptimize(restored.data());
  }
}
BENCHMARK(bm_denoise)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void bm_impute(benchmark::State& state) {
  const int n = 37;
  const int cols = static_cast<int>(state.range(0));
  glearn::SensorGraph graph;
  graph.adjacency = random_graph(n, 3);
  const glearn::Matrix lap = glearn::laplacian(graph);
  const glearn::Matrix truth = random_signals(n, cols, 7);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  glearn::Matrix mask(n, cols);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < cols; ++j) mask(i, j) = coin(rng) < 0.5 ? 1.0 : 0.0;
  }
  const glearn::Matrix observed = truth.array() * mask.array();

  for (auto _ : state) {
    auto result = glearn::impute(observed, mask, lap);
    benchmark::DoNotOptimize(result.values.data());
  }
}
BENCHMARK(bm_impute)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

void bm_lambda_max(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  glearn::SensorGraph graph;
  graph.adjacency = random_graph(n, 13);
  const glearn::Matrix lap = glearn::laplacian(graph);
  for (auto _ : state) {
    benchmark::DoNotOptimize(glearn::symmetric_lambda_max(lap));
  }
}
BENCHMARK(bm_lambda_max)->Arg(37)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
