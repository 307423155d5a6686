#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "splp/linalg.hpp"

namespace splp::lp {

enum class LpStatus { optimal, infeasible, unbounded };

const char* to_string(LpStatus status) noexcept;

struct SimplexOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  /// Pivot elements smaller than this are never used.
  double pivot_tol = 1e-11;
  /// Consecutive degenerate pivots before switching from Dantzig to Bland pricing.
  std::size_t degenerate_streak = 50;
  /// Basis inverse is rebuilt from scratch after this many product-form updates.
  std::size_t refactor_every = 64;
};

/// Result of `min cᵀx  s.t.  Ax = b, x ≥ 0`.
struct StandardFormResult {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> x;
  /// Simplex multipliers π with cⱼ − πᵀAⱼ ≥ 0 at optimality.
  std::vector<double> multipliers;
  double objective = 0.0;
  std::size_t iterations = 0;
};

/// Two-phase dense revised simplex on a standard-form problem. The basis has
/// one column per equality row, so the per-pivot cost is O(rows · cols).
/// Throws ConvergenceFailure once `max_pivots` pivots have been spent.
StandardFormResult solve_standard_form(const linalg::DenseMatrix& a, std::span<const double> b,
                                       std::span<const double> c, std::size_t max_pivots,
                                       const SimplexOptions& options = {});

/// Result of `min cᵀy  s.t.  Ay ≥ b` with y free.
struct SimplexOutcome {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> y;
  double objective = 0.0;
  std::size_t iterations = 0;
};

/// Solves `min cᵀy s.t. Ay ≥ b` (A is m×r, m ≥ r) through its dual
/// `max bᵀu s.t. Aᵀu = c, u ≥ 0`, whose basis is only r×r. When the dual is
/// infeasible a Farkas system decides between an infeasible and an
/// unbounded primal. Throws ConvergenceFailure after 10·(m + r) pivots.
SimplexOutcome simplex_core(const linalg::DenseMatrix& a, std::span<const double> b,
                            std::span<const double> c, const SimplexOptions& options = {});

}  // namespace splp::lp
