#include <benchmark/benchmark.h>

#include "splp/lp.hpp"
#include "splp/mmsb.hpp"

using namespace splp;

static void BM_RecoverAll(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto mode = state.range(1) ? lp::RecoveryMode::exact : lp::RecoveryMode::spectral;
  Rng rng(11);
  mmsb::MmsbParams params;
  params.n = n;
  params.k = 3;
  params.alpha = 0.5;
  params.b = mmsb::make_interaction_matrix(mmsb::InteractionKind::diag_random, 3, 0.0, rng);
  const auto theta = mmsb::sample_theta(params, rng);
  const auto p = mmsb::build_probability_matrix(theta, params.b);
  const auto g = mode == lp::RecoveryMode::exact ? p : mmsb::sample_adjacency_average(p, mmsb::default_samples(n), rng);
  for (auto _ : state) {
    Rng run(1);
    benchmark::DoNotOptimize(lp::recover_all(g, 3, mode, run));
  }
}
BENCHMARK(BM_RecoverAll)
    ->ArgsProduct({{500, 1000, 2000}, {0, 1}})
    ->ArgNames({"n", "exact"})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
