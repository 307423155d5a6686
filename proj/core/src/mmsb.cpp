#include "splp/mmsb.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "splp/error.hpp"

namespace splp::mmsb {

void MmsbParams::validate() const {
  if (k < 2) throw InvalidInput("MmsbParams: k must be at least 2");
  if (n < k) throw InvalidInput("MmsbParams: n must be at least k");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidInput("MmsbParams: alpha must be positive");
  if (b.rows() != k || b.cols() != k) throw InvalidInput("MmsbParams: B must be k x k");
  if (linalg::max_asymmetry(b) > 1e-12) throw InvalidInput("MmsbParams: B must be symmetric");
  for (double x : b.data())
    if (!(x >= 0.0 && x <= 1.0)) throw InvalidInput("MmsbParams: B entries must lie in [0, 1]");
}

std::size_t default_samples(std::size_t n) {
  auto s = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  while (s * s < n) ++s;
  while (s > 1 && (s - 1) * (s - 1) >= n) --s;
  return std::max<std::size_t>(s, 1);
}

namespace {

// log of a Gamma(shape, 1) variate; stays finite for tiny shapes where the
// variate itself underflows.
double log_gamma_variate(Rng& rng, double shape) {
  if (shape < 1.0) {
    const double g = gamma_variate(rng, shape + 1.0);
    return std::log(g) + std::log(uniform_open01(rng)) / shape;
  }
  return std::log(gamma_variate(rng, shape));
}

}  // namespace

ThetaMatrix sample_theta(const MmsbParams& params, Rng& rng) {
  params.validate();
  const std::size_t n = params.n;
  const std::size_t k = params.k;
  ThetaMatrix out{DenseMatrix(n, k)};
  std::vector<double> logs(k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) logs[j] = log_gamma_variate(rng, params.alpha);
    const double top = *std::max_element(logs.begin(), logs.end());
    double sum = 0.0;
    auto row = out.theta.row(i);
    for (std::size_t j = 0; j < k; ++j) {
      row[j] = std::exp(logs[j] - top);
      sum += row[j];
    }
    for (double& x : row) x /= sum;
  }
  return out;
}

WeightedGraph build_probability_matrix(const ThetaMatrix& theta, const DenseMatrix& b) {
  const DenseMatrix& t = theta.theta;
  if (b.rows() != b.cols() || t.cols() != b.rows())
    throw InvalidInput("build_probability_matrix: Theta columns must match B");
  if (linalg::max_asymmetry(b) > 1e-12) throw InvalidInput("build_probability_matrix: B not symmetric");
  for (double x : b.data())
    if (!(x >= 0.0 && x <= 1.0)) throw InvalidInput("build_probability_matrix: B entries outside [0, 1]");

  const DenseMatrix tb = linalg::multiply(t, b);
  const std::size_t n = t.rows();
  WeightedGraph g{DenseMatrix(n, n), GraphKind::exact_p, 0};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = std::clamp(linalg::dot(tb.row(i), t.row(j)), 0.0, 1.0);
      g.adj(i, j) = v;
      g.adj(j, i) = v;
    }
  }
  return g;
}

WeightedGraph sample_adjacency_average(const WeightedGraph& p, std::size_t s,
                                       std::uint64_t stream_seed,
                                       std::span<const std::uint64_t> labels) {
  if (s < 1) throw InvalidInput("sample_adjacency_average: s must be at least 1");
  const std::size_t n = p.adj.rows();
  if (p.adj.cols() != n) throw InvalidInput("sample_adjacency_average: P not square");
  if (!labels.empty() && labels.size() != n)
    throw InvalidInput("sample_adjacency_average: one label per node required");

  auto label = [&](std::size_t i) -> std::uint64_t { return labels.empty() ? i : labels[i]; };
  const double inv_s = 1.0 / static_cast<double>(s);

  WeightedGraph a{DenseMatrix(n, n), GraphKind::sampled_average, s};
  for (std::size_t i = 0; i < n; ++i) {
    a.adj(i, i) = 1.0;
    const std::uint64_t li = label(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::uint64_t lj = label(j);
      SplitMix64 gen(derive_seed(stream_seed, std::min(li, lj), std::max(li, lj)));
      const double prob = p.adj(i, j);
      std::size_t hits = 0;
      for (std::size_t t = 0; t < s; ++t)
        if (uniform01(gen) < prob) ++hits;
      const double v = static_cast<double>(hits) * inv_s;
      a.adj(i, j) = v;
      a.adj(j, i) = v;
    }
  }
  return a;
}

WeightedGraph sample_adjacency_average(const WeightedGraph& p, std::size_t s, Rng& rng) {
  return sample_adjacency_average(p, s, rng(), {});
}

DenseMatrix make_interaction_matrix(InteractionKind kind, std::size_t k, double delta, Rng& rng) {
  if (k < 2) throw InvalidInput("make_interaction_matrix: k must be at least 2");
  DenseMatrix b(k, k);
  switch (kind) {
    case InteractionKind::delta_blend:
      if (!(delta >= 0.0 && delta <= 1.0))
        throw InvalidInput("make_interaction_matrix: delta must lie in [0, 1]");
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) b(i, j) = (i == j ? 1.0 - delta : 0.0) + delta;
      break;
    case InteractionKind::diag_random:
      for (std::size_t i = 0; i < k; ++i) b(i, i) = 0.5 + 0.5 * uniform01(rng);
      break;
  }
  return b;
}

}  // namespace splp::mmsb
