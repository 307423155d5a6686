#include "splp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "splp/error.hpp"

namespace splp::lp {

const char* to_string(LpStatus status) noexcept {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

using linalg::DenseMatrix;

// Revised simplex over the column set [D·A | I], where D flips rows so the
// right-hand side is nonnegative and I holds the phase-one artificials.
class RevisedSimplex {
 public:
  RevisedSimplex(const DenseMatrix& a, std::span<const double> b, std::size_t max_pivots,
                 const SimplexOptions& opt)
      : a_(a), m_(a.rows()), n_(a.cols()), max_pivots_(max_pivots), opt_(opt),
        sign_(m_), rhs_(m_), basis_(m_), is_basic_(n_ + m_, false), binv_(m_, m_) {
    for (std::size_t i = 0; i < m_; ++i) {
      sign_[i] = b[i] < 0.0 ? -1.0 : 1.0;
      rhs_[i] = sign_[i] * b[i];
      basis_[i] = n_ + i;
      is_basic_[n_ + i] = true;
      binv_(i, i) = 1.0;
    }
    xb_ = rhs_;
  }

  std::size_t iterations() const { return iterations_; }

  // Returns false when phase one proves the equality system infeasible.
  bool phase_one() {
    std::vector<double> cost(n_ + m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) cost[n_ + i] = 1.0;
    if (iterate(cost) != LpStatus::optimal)
      throw ConvergenceFailure("simplex: phase one reported unbounded", 0.0);
    double infeasibility = 0.0;
    for (std::size_t r = 0; r < m_; ++r)
      if (is_artificial(basis_[r])) infeasibility += xb_[r];
    double scale = 1.0;
    for (double v : rhs_) scale = std::max(scale, std::abs(v));
    if (infeasibility > opt_.feasibility_tol * scale) return false;
    drive_out_artificials();
    return true;
  }

  LpStatus phase_two(std::span<const double> c) {
    cost_.assign(n_ + m_, 0.0);
    std::copy(c.begin(), c.end(), cost_.begin());
    return iterate(cost_);
  }

  std::vector<double> primal() const {
    std::vector<double> x(n_, 0.0);
    for (std::size_t r = 0; r < m_; ++r)
      if (!is_artificial(basis_[r])) x[basis_[r]] = std::max(0.0, xb_[r]);
    return x;
  }

  // Multipliers in terms of the caller's (unflipped) rows.
  std::vector<double> multipliers() const {
    auto pi = compute_pi(cost_);
    for (std::size_t i = 0; i < m_; ++i) pi[i] *= sign_[i];
    return pi;
  }

 private:
  bool is_artificial(std::size_t j) const { return j >= n_; }

  double column_entry(std::size_t i, std::size_t j) const {
    if (j < n_) return sign_[i] * a_(i, j);
    return (j - n_) == i ? 1.0 : 0.0;
  }

  std::vector<double> column(std::size_t j) const {
    std::vector<double> col(m_);
    for (std::size_t i = 0; i < m_; ++i) col[i] = column_entry(i, j);
    return col;
  }

  // u = B⁻¹ a_j
  std::vector<double> ftran(std::size_t j) const {
    const auto col = column(j);
    std::vector<double> u(m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) u[r] = linalg::dot(binv_.row(r), col);
    return u;
  }

  std::vector<double> compute_pi(const std::vector<double>& cost) const {
    std::vector<double> pi(m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      const double cb = cost[basis_[r]];
      if (cb == 0.0) continue;
      const auto br = binv_.row(r);
      for (std::size_t i = 0; i < m_; ++i) pi[i] += cb * br[i];
    }
    return pi;
  }

  void refactor() {
    // Gauss-Jordan inverse of the basis matrix with partial pivoting.
    DenseMatrix bm(m_, m_);
    for (std::size_t r = 0; r < m_; ++r)
      for (std::size_t i = 0; i < m_; ++i) bm(i, r) = column_entry(i, basis_[r]);
    DenseMatrix inv = DenseMatrix::identity(m_);
    for (std::size_t col = 0; col < m_; ++col) {
      std::size_t piv = col;
      for (std::size_t i = col + 1; i < m_; ++i)
        if (std::abs(bm(i, col)) > std::abs(bm(piv, col))) piv = i;
      if (std::abs(bm(piv, col)) < 1e-14)
        throw ConvergenceFailure("simplex: basis matrix became singular", std::abs(bm(piv, col)));
      if (piv != col) {
        for (std::size_t t = 0; t < m_; ++t) {
          std::swap(bm(piv, t), bm(col, t));
          std::swap(inv(piv, t), inv(col, t));
        }
      }
      const double d = bm(col, col);
      for (std::size_t t = 0; t < m_; ++t) {
        bm(col, t) /= d;
        inv(col, t) /= d;
      }
      for (std::size_t i = 0; i < m_; ++i) {
        if (i == col) continue;
        const double f = bm(i, col);
        if (f == 0.0) continue;
        for (std::size_t t = 0; t < m_; ++t) {
          bm(i, t) -= f * bm(col, t);
          inv(i, t) -= f * inv(col, t);
        }
      }
    }
    binv_ = std::move(inv);
    for (std::size_t r = 0; r < m_; ++r) {
      xb_[r] = linalg::dot(binv_.row(r), rhs_);
      if (xb_[r] < 0.0 && xb_[r] > -opt_.feasibility_tol) xb_[r] = 0.0;
    }
    since_refactor_ = 0;
  }

  void pivot(std::size_t leave_row, std::size_t enter, const std::vector<double>& u, double step) {
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == leave_row) continue;
      xb_[r] -= step * u[r];
      if (xb_[r] < 0.0 && xb_[r] > -opt_.feasibility_tol) xb_[r] = 0.0;
    }
    xb_[leave_row] = step;

    auto pr = binv_.row(leave_row);
    const double d = u[leave_row];
    for (double& x : pr) x /= d;
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == leave_row || u[r] == 0.0) continue;
      auto br = binv_.row(r);
      for (std::size_t i = 0; i < m_; ++i) br[i] -= u[r] * pr[i];
    }

    is_basic_[basis_[leave_row]] = false;
    basis_[leave_row] = enter;
    is_basic_[enter] = true;

    if (++iterations_ > max_pivots_)
      throw ConvergenceFailure("simplex: pivot limit of " + std::to_string(max_pivots_) + " reached",
                               best_reduced_cost_);
    if (++since_refactor_ >= opt_.refactor_every) refactor();
  }

  LpStatus iterate(const std::vector<double>& cost) {
    std::size_t streak = 0;
    bool bland = false;
    std::vector<double> reduced(n_);
    for (;;) {
      const auto pi = compute_pi(cost);

      // Reduced costs of structural columns; artificials never re-enter.
      for (std::size_t j = 0; j < n_; ++j) reduced[j] = cost[j];
      for (std::size_t i = 0; i < m_; ++i) {
        const double w = pi[i] * sign_[i];
        if (w == 0.0) continue;
        const auto ai = a_.row(i);
        for (std::size_t j = 0; j < n_; ++j) reduced[j] -= w * ai[j];
      }

      std::size_t enter = n_;
      double most_negative = -opt_.optimality_tol;
      for (std::size_t j = 0; j < n_; ++j) {
        if (is_basic_[j]) continue;
        if (reduced[j] < most_negative) {
          enter = j;
          most_negative = reduced[j];
          if (bland) break;
        }
      }
      best_reduced_cost_ = most_negative;
      if (enter == n_) return LpStatus::optimal;

      const auto u = ftran(enter);
      std::size_t leave = m_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < m_; ++r) {
        double ratio;
        if (is_artificial(basis_[r]) && phase_two_ && std::abs(u[r]) > opt_.pivot_tol) {
          ratio = 0.0;  // a zero-level artificial must not move off zero
        } else if (u[r] > opt_.pivot_tol) {
          ratio = std::max(0.0, xb_[r]) / u[r];
        } else {
          continue;
        }
        if (leave == m_ || ratio < best_ratio - 1e-12 ||
            (ratio <= best_ratio + 1e-12 && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave == m_) return LpStatus::unbounded;

      if (best_ratio <= opt_.feasibility_tol) {
        if (++streak >= opt_.degenerate_streak) bland = true;
      } else {
        streak = 0;
        bland = false;
      }
      pivot(leave, enter, u, best_ratio);
    }
  }

  void drive_out_artificials() {
    phase_two_ = true;
    for (std::size_t r = 0; r < m_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      std::size_t best = n_;
      double best_abs = 1e-9;
      for (std::size_t j = 0; j < n_; ++j) {
        if (is_basic_[j]) continue;
        double v = 0.0;
        for (std::size_t i = 0; i < m_; ++i) v += binv_(r, i) * column_entry(i, j);
        if (std::abs(v) > best_abs) {
          best_abs = std::abs(v);
          best = j;
        }
      }
      if (best == n_) continue;  // redundant row; artificial stays basic at zero
      const auto u = ftran(best);
      pivot(r, best, u, std::max(0.0, xb_[r]) / u[r]);
    }
  }

  const DenseMatrix& a_;
  std::size_t m_;
  std::size_t n_;
  std::size_t max_pivots_;
  SimplexOptions opt_;
  std::vector<double> sign_;
  std::vector<double> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<bool> is_basic_;
  DenseMatrix binv_;
  std::vector<double> xb_;
  std::vector<double> cost_;
  std::size_t iterations_ = 0;
  std::size_t since_refactor_ = 0;
  bool phase_two_ = false;
  double best_reduced_cost_ = 0.0;
};

}  // namespace

StandardFormResult solve_standard_form(const DenseMatrix& a, std::span<const double> b,
                                       std::span<const double> c, std::size_t max_pivots,
                                       const SimplexOptions& options) {
  if (b.size() != a.rows() || c.size() != a.cols())
    throw InvalidInput("solve_standard_form: dimension mismatch");
  if (!linalg::all_finite(a)) throw InvalidInput("solve_standard_form: non-finite constraint data");

  RevisedSimplex solver(a, b, max_pivots, options);
  StandardFormResult out;
  if (!solver.phase_one()) {
    out.status = LpStatus::infeasible;
    out.iterations = solver.iterations();
    return out;
  }
  out.status = solver.phase_two(c);
  out.iterations = solver.iterations();
  out.x = solver.primal();
  out.multipliers = solver.multipliers();
  out.objective = linalg::dot(c, out.x);
  return out;
}

SimplexOutcome simplex_core(const DenseMatrix& a, std::span<const double> b,
                            std::span<const double> c, const SimplexOptions& options) {
  const std::size_t m = a.rows();
  const std::size_t r = a.cols();
  if (b.size() != m || c.size() != r) throw InvalidInput("simplex_core: dimension mismatch");
  if (m < r) throw InvalidInput("simplex_core: need at least as many constraints as variables");
  const std::size_t max_pivots = 10 * (m + r);

  // Dual in standard form: min (−b)ᵀu  s.t.  Aᵀu = c, u ≥ 0.
  const DenseMatrix at = a.transpose();
  std::vector<double> neg_b(m);
  for (std::size_t i = 0; i < m; ++i) neg_b[i] = -b[i];
  const auto dual = solve_standard_form(at, c, neg_b, max_pivots, options);

  SimplexOutcome out;
  out.iterations = dual.iterations;
  if (dual.status == LpStatus::optimal) {
    out.status = LpStatus::optimal;
    out.y.resize(r);
    for (std::size_t j = 0; j < r; ++j) out.y[j] = -dual.multipliers[j];
    out.objective = linalg::dot(c, out.y);
    return out;
  }
  if (dual.status == LpStatus::unbounded) {
    out.status = LpStatus::infeasible;
    return out;
  }

  // Dual infeasible: the primal is infeasible iff some u ≥ 0 with Aᵀu = 0,
  // eᵀu ≤ 1 has bᵀu > 0.
  DenseMatrix farkas(r + 1, m + 1);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < m; ++i) farkas(j, i) = a(i, j);
  for (std::size_t i = 0; i <= m; ++i) farkas(r, i) = 1.0;
  std::vector<double> rhs(r + 1, 0.0);
  rhs[r] = 1.0;
  std::vector<double> cost(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) cost[i] = -b[i];
  const auto cert = solve_standard_form(farkas, rhs, cost, max_pivots, options);
  out.iterations += cert.iterations;

  double scale = 1.0;
  for (double v : b) scale = std::max(scale, std::abs(v));
  const bool infeasible =
      cert.status == LpStatus::optimal && cert.objective < -options.feasibility_tol * scale;
  out.status = infeasible ? LpStatus::infeasible : LpStatus::unbounded;
  return out;
}

}  // namespace splp::lp
