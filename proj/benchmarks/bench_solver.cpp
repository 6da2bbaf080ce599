#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "glearn/degree_operator.hpp"
#include "glearn/igl.hpp"
#include "glearn/prox.hpp"
#include "glearn/types.hpp"

namespace {

/// Synthetic distance vector with the rough scale of normalized signals.
glearn::Vector synthetic_distances(int n) {
  const int edges = n * (n - 1) / 2;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dist(0.05, 1.5);
  glearn::Vector z(edges);
  for (int e = 0; e < edges; ++e) z[e] = dist(rng);
  return z;
}

void bm_solve_igl(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const glearn::Vector z = synthetic_distances(n);
  glearn::IglParams params;
  params.alpha = 1.0;
  params.beta = 0.2;
  params.eps0 = 1e-5;
  params.k_max = 20000;
  params.record_objective = false;

  for (auto _ : state) {
    auto result = glearn::solve_igl(n, z, params);
    benchmark::DoNotOptimize(result.w.weights.data());
  }
  state.counters["iterations"] =
      static_cast<double>(glearn::solve_igl(n, z, params).trace.iterations);
}
BENCHMARK(bm_solve_igl)->Arg(10)->Arg(20)->Arg(37)->Unit(benchmark::kMillisecond);

void bm_degree_apply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const glearn::Vector w = synthetic_distances(n);
  for (auto _ : state) {
    auto d = glearn::degree_operator_apply(w, n);
    benchmark::DoNotOptimize(d.data());
  }
}
BENCHMARK(bm_degree_apply)->Arg(37)->Arg(100);

void bm_prox_log_barrier(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  glearn::Vector y(n);
  for (int i = 0; i < n; ++i) y[i] = dist(rng);
  for (auto _ : state) {
    auto u = glearn::prox_log_barrier(y, 0.1, 1.0);
    benchmark::DoNotOptimize(u.data());
  }
}
BENCHMARK(bm_prox_log_barrier)->Arg(37)->Arg(666);

}  // namespace

BENCHMARK_MAIN();
