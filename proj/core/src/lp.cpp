#include "splp/lp.hpp"

#include <cmath>

#include "splp/error.hpp"

namespace splp::lp {

LpSolution solve_anchor_lp(const LpProblem& problem, const SimplexOptions& options) {
  return solve_anchor_lp(problem.basis, problem.anchor_row, options);
}

LpSolution solve_anchor_lp(const linalg::DenseMatrix& basis, std::size_t anchor_row,
                           const SimplexOptions& options) {
  const std::size_t n = basis.rows();
  const std::size_t r = basis.cols();
  if (r == 0 || r > n) throw InvalidInput("solve_anchor_lp: basis must be n x r with 1 <= r <= n");
  if (anchor_row >= n) throw InvalidInput("solve_anchor_lp: anchor row out of range");

  // Rows of the ≥-system: every row of M (x ≥ 0), then the anchor row again (x_i ≥ 1).
  linalg::DenseMatrix a(n + 1, r);
  std::vector<double> b(n + 1, 0.0);
  std::vector<double> c(r, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto mi = basis.row(i);
    std::copy(mi.begin(), mi.end(), a.row(i).begin());
    for (std::size_t j = 0; j < r; ++j) c[j] += mi[j];
  }
  const auto anchor = basis.row(anchor_row);
  std::copy(anchor.begin(), anchor.end(), a.row(n).begin());
  b[n] = 1.0;

  const SimplexOutcome core = simplex_core(a, b, c, options);
  LpSolution out;
  out.status = core.status;
  out.iterations = core.iterations;
  if (core.status != LpStatus::optimal) return out;

  out.y_star = core.y;
  out.x_star = linalg::multiply(basis, out.y_star);
  out.objective = 0.0;
  for (double x : out.x_star) out.objective += x;
  return out;
}

RecoveryBasis recovery_basis(const linalg::DenseMatrix& adj, std::size_t k, RecoveryMode mode,
                             Rng& rng, const linalg::EigenOptions& eigen) {
  linalg::EigenOptions eig_opts = eigen;
  eig_opts.order = mode == RecoveryMode::exact ? linalg::EigenOrder::magnitude
                                               : linalg::EigenOrder::algebraic;
  RecoveryBasis out;
  out.embedding = linalg::top_k_eigs(adj, k, rng, eig_opts);
  out.basis = out.embedding.vectors;
  if (mode == RecoveryMode::exact)
    for (std::size_t i = 0; i < out.basis.rows(); ++i)
      for (std::size_t j = 0; j < k; ++j) out.basis(i, j) *= out.embedding.values[j];
  return out;
}

RecoveryResult recover_all(const mmsb::WeightedGraph& graph, std::size_t k, RecoveryMode mode,
                           Rng& rng, const RecoveryOptions& options) {
  const auto& adj = graph.adj;
  const std::size_t n = adj.rows();
  if (adj.cols() != n) throw InvalidInput("recover_all: adjacency must be square");
  if (k < 2 || k > n) throw InvalidInput("recover_all: k must lie in [2, n]");

  const RecoveryBasis rb = recovery_basis(adj, k, mode, rng, options.eigen);

  RecoveryResult out;
  out.eigenvalues = rb.embedding.values;
  const linalg::DenseMatrix& basis = rb.basis;
  if (mode == RecoveryMode::exact)
    out.spa = spa::successive_projection(adj, k, options.spa_zero_tol);
  else
    out.spa = spa::successive_projection(linalg::multiply_at_b(rb.embedding.vectors, adj), k,
                                         options.spa_zero_tol);

  out.theta_hat = linalg::DenseMatrix(n, k);
  out.per_column_status.assign(k, LpStatus::infeasible);
  out.suspect.assign(k, false);
  for (std::size_t j = 0; j < out.spa.indices.size(); ++j) {
    const LpSolution sol = solve_anchor_lp(basis, out.spa.indices[j], options.simplex);
    out.per_column_status[j] = sol.status;
    if (sol.status != LpStatus::optimal) continue;
    const double scale = linalg::norm_inf(sol.x_star);
    const bool suspect = scale < 1.0 - 1e-6;
    out.suspect[j] = suspect;
    for (std::size_t i = 0; i < n; ++i)
      out.theta_hat(i, j) = suspect ? sol.x_star[i] : sol.x_star[i] / scale;
  }
  return out;
}

}  // namespace splp::lp
