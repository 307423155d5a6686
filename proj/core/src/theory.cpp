#include "splp/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "splp/error.hpp"

namespace splp::theory {

namespace {

constexpr double kTiny = 1e-300;

// Continued fraction for I_x(a,b) · a / front, evaluated by modified Lentz.
double beta_continued_fraction(double x, double a, double b) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 100000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) return h;
  }
  throw ConvergenceFailure("reg_incomplete_beta: continued fraction did not converge", 0.0);
}

}  // namespace

double reg_incomplete_beta(double x, double a, double b) {
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidInput("reg_incomplete_beta: x must lie in [0, 1]");
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw InvalidInput("reg_incomplete_beta: a and b must be positive");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const double log_front = a * std::log(x) + b * std::log1p(-x) + std::lgamma(a + b) -
                           std::lgamma(a) - std::lgamma(b);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(x, a, b) / a;
  return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

TheoremBounds compute_bounds(double alpha, std::size_t k, double kappa, double p,
                             std::optional<double> epsilon) {
  if (k < 2) throw InvalidInput("compute_bounds: k must be at least 2");
  if (!(alpha > 0.0)) throw InvalidInput("compute_bounds: alpha must be positive");
  if (!(kappa >= 1.0) || !std::isfinite(kappa)) throw InvalidInput("compute_bounds: kappa must be >= 1");
  if (!(p > 0.0 && p < 1.0)) throw InvalidInput("compute_bounds: p must lie in (0, 1)");

  const double kd = static_cast<double>(k);
  const double sqrt2 = std::sqrt(2.0);
  TheoremBounds out;
  out.kappa = kappa;
  out.p = p;
  out.w = 8.0 * kappa * std::sqrt(alpha * kd + 1.0);
  const double w2 = out.w * out.w;
  out.epsilon1 = std::min(1.0 / std::sqrt(kd - 1.0), 0.5) / (2.0 * sqrt2 * out.w * (1.0 + 80.0 * w2));
  out.epsilon2 = 7.0 / (3520.0 * sqrt2 * kd * w2);
  const double eps_max = std::min(out.epsilon1, out.epsilon2);
  out.epsilon = epsilon.value_or(0.5 * eps_max);
  if (!(out.epsilon > 0.0 && out.epsilon < 1.0))
    throw InvalidInput("compute_bounds: epsilon must lie in (0, 1)");
  out.epsilon_in_range = out.epsilon < eps_max;

  // 1 − I_{1−ε}(α, (k−1)α) = I_ε((k−1)α, α), evaluated directly for accuracy.
  out.near_pure_probability = reg_incomplete_beta(out.epsilon, (kd - 1.0) * alpha, alpha);
  if (out.near_pure_probability > 1e-15) {
    const double ratio = std::log(p / kd) / std::log1p(-out.near_pure_probability);
    if (ratio < 1.8e19) out.min_n = static_cast<std::uint64_t>(std::floor(ratio)) + 1;
  }
  out.error_bound = 10240.0 * sqrt2 * kappa * kappa * (alpha * kd + 1.0) *
                    (2.0 * sqrt2 * kd + 1.0) * out.epsilon;
  return out;
}

TheoremBounds compute_bounds(const mmsb::MmsbParams& params, double p,
                             std::optional<double> epsilon) {
  params.validate();
  const auto sv = linalg::singular_values(params.b);
  if (!(sv.back() > 1e-12)) throw InvalidInput("compute_bounds: B is singular");
  return compute_bounds(params.alpha, params.k, sv.front() / sv.back(), p, epsilon);
}

double c_failure_probability(std::size_t n, std::size_t k) {
  const double kd = static_cast<double>(k);
  return 2.0 * kd * std::exp(-static_cast<double>(n) / (50.0 * kd * kd));
}

double theta_norm_failure_probability(std::size_t n, std::size_t k) {
  const double kd = static_cast<double>(k);
  return std::exp(kd * std::log(5.0) - 2.0 * static_cast<double>(n) / (kd * kd));
}

double sigma_k_failure_probability(std::size_t n, std::size_t k, double alpha, double l, double u) {
  const double kd = static_cast<double>(k);
  const double ak1 = alpha * kd + 1.0;
  const double net = kd * std::log(16.0 * u * std::sqrt(ak1) / l + 1.0);
  const double expo = -static_cast<double>(n) * std::pow(l, 4) /
                      (2.0 * kd * kd * std::pow(u, 4) * ak1 * ak1);
  return theta_norm_failure_probability(n, k) + std::exp(net + expo);
}

ConcentrationReport run_concentration_check(const mmsb::MmsbParams& params, std::size_t trials,
                                            std::uint64_t base_seed) {
  params.validate();
  if (trials < 1) throw InvalidInput("run_concentration_check: trials must be at least 1");

  const std::size_t n = params.n;
  const std::size_t k = params.k;
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);

  const auto sv_b = linalg::singular_values(params.b);
  const double u = sv_b.front();
  const double l = sv_b.back();

  ConcentrationReport rep;
  rep.trials = trials;
  rep.p1 = c_failure_probability(n, k);
  rep.p2 = theta_norm_failure_probability(n, k);
  rep.p3 = l > 0.0 ? sigma_k_failure_probability(n, k, params.alpha, l, u)
                   : std::numeric_limits<double>::infinity();
  rep.min_sigma_k = std::numeric_limits<double>::infinity();

  const double c_lo = 0.9 * nd / kd;
  const double c_hi = 1.1 * nd / kd;
  const double theta_norm_bound = 2.0 * std::sqrt(2.0 * nd / kd);
  const double sigma_k_bound = 0.25 * l / std::sqrt(params.alpha * kd + 1.0) * std::sqrt(2.0 * nd / kd);

  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(base_seed, t));
    const auto theta = mmsb::sample_theta(params, rng).theta;

    std::vector<double> c(k, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j) c[j] += theta(i, j);
    double total = 0.0;
    for (double v : c) total += v;
    rep.max_c_sum_deviation = std::max(rep.max_c_sum_deviation, std::abs(total - nd));

    const auto [cmin, cmax] = std::minmax_element(c.begin(), c.end());
    if (*cmin < c_lo || *cmax > c_hi) ++rep.c_vector_violations;
    const double ratio = *cmin / *cmax;
    rep.min_c_ratio = std::min(rep.min_c_ratio, ratio);
    if (ratio < 9.0 / 11.0) ++rep.c_ratio_violations;

    const auto gram = linalg::multiply_at_b(theta, theta);
    Rng eig_rng(derive_seed(base_seed, t, 1));
    const auto top = linalg::top_k_eigs(gram, 1, eig_rng);
    const double theta_norm = std::sqrt(std::max(0.0, top.values[0]));
    rep.max_theta_norm = std::max(rep.max_theta_norm, theta_norm);
    if (theta_norm > theta_norm_bound) ++rep.theta_norm_violations;

    const auto sv = linalg::singular_values(linalg::multiply(theta, params.b));
    const double sigma_k = sv[k - 1];
    rep.min_sigma_k = std::min(rep.min_sigma_k, sigma_k);
    if (sigma_k < sigma_k_bound) ++rep.sigma_k_violations;
  }
  return rep;
}

bool within_probability_bound(std::size_t violations, std::size_t trials, double bound) {
  if (bound >= 1.0) return true;
  const double b = std::max(0.0, bound);
  const double freq = static_cast<double>(violations) / static_cast<double>(trials);
  return freq <= b + 4.0 * std::sqrt(b * (1.0 - b) / static_cast<double>(trials));
}

}  // namespace splp::theory
