#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "splp/mmsb.hpp"

namespace splp::theory {

/// Regularized incomplete beta function I_x(a, b), the Beta(a, b) CDF.
/// Continued fraction (modified Lentz) with I_x(a,b) = 1 − I_{1−x}(b,a) on the
/// slow side. Throws InvalidInput unless x ∈ [0,1], a > 0, b > 0.
double reg_incomplete_beta(double x, double a, double b);

/// Closed-form quantities of the sample-size bound for equal Dirichlet
/// parameters.
struct TheoremBounds {
  double kappa = 0.0;
  double w = 0.0;         ///< 8κ√(αk+1)
  double epsilon1 = 0.0;  ///< min(1/√(k−1), 1/2) / (2√2·w·(1 + 80w²))
  double epsilon2 = 0.0;  ///< 7 / (3520√2·k·w²)
  double p = 0.0;
  double epsilon = 0.0;
  /// Whether epsilon lies in (0, min(epsilon1, epsilon2)), where the
  /// recovery guarantee applies.
  bool epsilon_in_range = false;
  /// 1 − I_{1−ε}(α, (k−1)α): chance a single row is ε-close to a given corner.
  double near_pure_probability = 0.0;
  /// Smallest n strictly above log(p/k) / log I_{1−ε}(α, (k−1)α); empty when
  /// the denominator underflows (I ≥ 1 − 1e-15).
  std::optional<std::uint64_t> min_n;
  /// Entrywise error bound 10240√2·κ²(αk+1)(2√2k+1)·ε.
  double error_bound = 0.0;
};

/// `epsilon` empty selects 0.5·min(ε₁, ε₂).
/// Throws InvalidInput for k < 2, alpha ≤ 0, kappa < 1, or p ∉ (0,1).
TheoremBounds compute_bounds(double alpha, std::size_t k, double kappa, double p,
                             std::optional<double> epsilon = std::nullopt);

/// κ is taken from the singular values of params.b. Throws InvalidInput if B is
/// singular (σ_min ≤ 1e-12).
TheoremBounds compute_bounds(const mmsb::MmsbParams& params, double p,
                             std::optional<double> epsilon = std::nullopt);

/// 2k·exp(−n/(50k²)): bound on P(some c_j outside [0.9n/k, 1.1n/k]).
double c_failure_probability(std::size_t n, std::size_t k);
/// 5^k·exp(−2n/k²): bound on P(‖Θ‖ > 2√(2n/k)).
double theta_norm_failure_probability(std::size_t n, std::size_t k);
/// p₂ + (16u√(αk+1)/l + 1)^k·exp(−n l⁴ / (2k²u⁴(αk+1)²)): bound on
/// P(σ_k(ΘB) < (1/4)(l/√(αk+1))√(2n/k)).
double sigma_k_failure_probability(std::size_t n, std::size_t k, double alpha, double l, double u);

struct ConcentrationReport {
  std::size_t trials = 0;
  std::size_t c_vector_violations = 0;
  std::size_t c_ratio_violations = 0;
  std::size_t theta_norm_violations = 0;
  std::size_t sigma_k_violations = 0;
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
  /// Largest |Σ_j c_j − n| over all trials.
  double max_c_sum_deviation = 0.0;
  double min_c_ratio = 1.0;
  double max_theta_norm = 0.0;
  double min_sigma_k = 0.0;
};

/// Samples Θ `trials` times (trial t uses derive_seed(base_seed, t)) and counts
/// violations of the column-sum, column-ratio, ‖Θ‖ and σ_k(ΘB) concentration
/// bounds.
ConcentrationReport run_concentration_check(const mmsb::MmsbParams& params, std::size_t trials,
                                            std::uint64_t base_seed);

/// One-sided check: violations/trials ≤ bound + 4·√(bound(1−bound)/trials).
bool within_probability_bound(std::size_t violations, std::size_t trials, double bound);

}  // namespace splp::theory
