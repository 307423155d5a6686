#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "splp/linalg.hpp"

namespace splp::eval {

struct EvaluationResult {
  /// min over column permutations π of max_j ‖θ̂_j − θ_π(j)‖∞
  double error = 0.0;
  /// permutation[j] is the true column matched to estimated column j.
  std::vector<std::size_t> permutation;
  std::vector<double> per_column_errors;
};

/// Exhaustive search over permutations for k ≤ 8, bottleneck assignment above.
/// Throws InvalidInput on shape mismatch.
EvaluationResult entrywise_error(const linalg::DenseMatrix& theta_hat,
                                 const linalg::DenseMatrix& theta);

/// Min-max assignment on a square cost matrix: binary search over the distinct
/// costs with a bipartite perfect-matching feasibility test.
std::vector<std::size_t> bottleneck_assignment(const linalg::DenseMatrix& cost);

struct ComplexSet {
  /// Each complex is a sorted list of node indices.
  std::vector<std::vector<std::size_t>> complexes;
  /// Number of binarized columns merged into each complex.
  std::vector<std::size_t> merged_from;
};

/// Complex j = {i : θ̂(i, j) ≥ threshold}; empty complexes are dropped.
ComplexSet binarize(const linalg::DenseMatrix& theta_hat, double threshold = 0.5);

/// |A∩B|² / (|A|·|B|)
double overlap_score(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b);

/// Repeatedly unions the highest-scoring pair with score ≥ threshold (ties to
/// the lexicographically smallest index pair) until no pair qualifies.
/// Throws InvalidInput unless threshold lies in (0, 1].
ComplexSet merge_complexes(ComplexSet cs, double overlap_threshold = 0.8);

/// One complex per line, node names separated by single tabs, LF endings.
void write_complexes(std::ostream& out, const ComplexSet& cs,
                     const std::vector<std::string>& names);

}  // namespace splp::eval
