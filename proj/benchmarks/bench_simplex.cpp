#include <benchmark/benchmark.h>

#include <vector>

#include "splp/lp.hpp"
#include "splp/simplex.hpp"

using namespace splp;

// Anchor LP over a random basis of n rows and 3 columns.
static void BM_AnchorLp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  linalg::DenseMatrix theta(n, 3);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < 3; ++j) s += theta(i, j) = 0.1 + uniform01(rng);
    for (std::size_t j = 0; j < 3; ++j) theta(i, j) /= s;
  }
  theta(0, 0) = 1.0;
  theta(0, 1) = theta(0, 2) = 0.0;
  for (auto _ : state) benchmark::DoNotOptimize(lp::solve_anchor_lp(theta, 0));
}
BENCHMARK(BM_AnchorLp)->Arg(500)->Arg(2000)->Arg(5000)->Unit(benchmark::kMicrosecond);

static void BM_SimplexCoreDense(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const std::size_t r = 8;
  Rng rng(5);
  linalg::DenseMatrix a(m, r);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < r; ++j) a(i, j) = uniform01(rng) - 0.3;
  std::vector<double> b(m, 0.0);
  std::vector<double> c(r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < m; ++i) c[j] += a(i, j);
  for (std::size_t i = 0; i < m; ++i) b[i] = -uniform01(rng);
  for (auto _ : state) benchmark::DoNotOptimize(lp::simplex_core(a, b, c));
}
BENCHMARK(BM_SimplexCoreDense)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);
