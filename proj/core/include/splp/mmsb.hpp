#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "splp/linalg.hpp"
#include "splp/rng.hpp"

namespace splp::mmsb {

using linalg::DenseMatrix;

/// Model parameters: n nodes, k communities, symmetric Dirichlet(alpha) rows,
/// k×k community interaction matrix b.
struct MmsbParams {
  std::size_t n = 5000;
  std::size_t k = 3;
  double alpha = 0.5;
  DenseMatrix b;

  /// Throws InvalidInput unless k >= 2, n >= k, alpha > 0 and b is a
  /// symmetric k×k matrix with entries in [0, 1].
  void validate() const;
};

/// Row-stochastic n×k node-community distribution matrix.
struct ThetaMatrix {
  DenseMatrix theta;
};

enum class GraphKind { exact_p, sampled_average };

struct WeightedGraph {
  DenseMatrix adj;
  GraphKind kind = GraphKind::exact_p;
  std::size_t samples = 0;
};

enum class InteractionKind { delta_blend, diag_random };

/// ⌈√n⌉, the default number of averaged adjacency samples.
std::size_t default_samples(std::size_t n);

ThetaMatrix sample_theta(const MmsbParams& params, Rng& rng);

/// Θ B Θᵀ. Throws InvalidInput on dimension mismatch or an invalid B.
WeightedGraph build_probability_matrix(const ThetaMatrix& theta, const DenseMatrix& b);

/// Average of `s` independent symmetric Bernoulli(P) adjacency matrices with
/// unit diagonal. Entry (i, j) of every sample is drawn from a private stream
/// keyed by the unordered pair of node labels, so relabelling P and `labels`
/// together permutes the output the same way. An empty `labels` means
/// labels[i] = i.
WeightedGraph sample_adjacency_average(const WeightedGraph& p, std::size_t s,
                                       std::uint64_t stream_seed,
                                       std::span<const std::uint64_t> labels = {});

/// Convenience overload drawing the stream seed from `rng`.
WeightedGraph sample_adjacency_average(const WeightedGraph& p, std::size_t s, Rng& rng);

/// delta_blend: (1−δ)I + δeeᵀ. diag_random: 0.5I + 0.5·diag(U[0,1]).
DenseMatrix make_interaction_matrix(InteractionKind kind, std::size_t k, double delta, Rng& rng);

}  // namespace splp::mmsb
