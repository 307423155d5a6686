#pragma once

#include <cstddef>
#include <vector>

#include "splp/linalg.hpp"
#include "splp/mmsb.hpp"
#include "splp/rng.hpp"
#include "splp/simplex.hpp"
#include "splp/spa.hpp"

namespace splp::lp {

/// minimize eᵀ(My)  subject to  My ≥ 0,  (My)[anchor_row] ≥ 1.
///
/// `basis` is any n×r matrix whose columns span the admissible x; the LP
/// only depends on that column space.
struct LpProblem {
  linalg::DenseMatrix basis;
  std::size_t anchor_row = 0;
};

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> y_star;
  /// basis · y_star
  std::vector<double> x_star;
  double objective = 0.0;
  std::size_t iterations = 0;
};

LpSolution solve_anchor_lp(const LpProblem& problem, const SimplexOptions& options = {});
LpSolution solve_anchor_lp(const linalg::DenseMatrix& basis, std::size_t anchor_row,
                           const SimplexOptions& options = {});

enum class RecoveryMode {
  /// Input is the exact probability matrix P.
  exact,
  /// Input is a noisy observation; LPs run over its top-k eigenvectors.
  spectral,
};

struct RecoveryOptions {
  linalg::EigenOptions eigen{};
  double spa_zero_tol = 1e-9;
  SimplexOptions simplex{};
};

struct RecoveryResult {
  /// n×k; column j is x*/‖x*‖∞ for the j-th selected anchor.
  linalg::DenseMatrix theta_hat;
  spa::SpaResult spa;
  std::vector<LpStatus> per_column_status;
  /// Columns whose LP optimum had ‖x*‖∞ < 1 − 1e-6; left unnormalised.
  std::vector<bool> suspect;
  /// Eigenvalues of the k-dimensional subspace the LPs were posed over.
  std::vector<double> eigenvalues;
};

struct RecoveryBasis {
  /// n×k matrix whose column space the anchor LPs are posed over.
  linalg::DenseMatrix basis;
  linalg::SpectralEmbedding embedding;
};

/// exact: V·diag(λ) from the k eigenpairs of largest magnitude, which spans
/// range(P) for any full-rank B. spectral: V from the k algebraically largest.
RecoveryBasis recovery_basis(const linalg::DenseMatrix& adj, std::size_t k, RecoveryMode mode,
                             Rng& rng, const linalg::EigenOptions& eigen = {});

/// Successive projection followed by one anchor LP per community.
///
/// exact: the eigensolver runs in magnitude order so the basis V·diag(λ)
/// spans range(P) exactly, and successive projection runs on P itself.
/// spectral: basis is the top-k algebraic eigenvectors V of A, and successive
/// projection runs on VᵀA, an isometric image of the denoised V·VᵀA.
///
/// Per-column LP failures are reported in per_column_status; the remaining
/// columns are still solved.
RecoveryResult recover_all(const mmsb::WeightedGraph& graph, std::size_t k, RecoveryMode mode,
                           Rng& rng, const RecoveryOptions& options = {});

}  // namespace splp::lp
