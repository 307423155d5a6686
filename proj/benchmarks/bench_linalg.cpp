#include <benchmark/benchmark.h>

#include "splp/linalg.hpp"
#include "splp/mmsb.hpp"

using namespace splp;

static mmsb::WeightedGraph averaged_graph(std::size_t n) {
  Rng rng(7);
  mmsb::MmsbParams params;
  params.n = n;
  params.k = 3;
  params.alpha = 0.5;
  params.b = mmsb::make_interaction_matrix(mmsb::InteractionKind::diag_random, 3, 0.0, rng);
  const auto theta = mmsb::sample_theta(params, rng);
  return mmsb::sample_adjacency_average(mmsb::build_probability_matrix(theta, params.b),
                                        mmsb::default_samples(n), rng);
}

static void BM_TopKEigs(benchmark::State& state) {
  const auto g = averaged_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    Rng rng(1);
    benchmark::DoNotOptimize(linalg::top_k_eigs(g.adj, 3, rng));
  }
}
BENCHMARK(BM_TopKEigs)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_SymmetricEigenDense(benchmark::State& state) {
  const auto g = averaged_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(linalg::symmetric_eigen(g.adj));
}
BENCHMARK(BM_SymmetricEigenDense)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);
