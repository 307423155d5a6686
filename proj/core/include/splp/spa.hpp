#pragma once

#include <cstddef>
#include <vector>

#include "splp/linalg.hpp"

namespace splp::spa {

struct SpaResult {
  /// Selected column indices, in selection order.
  std::vector<std::size_t> indices;
  /// Euclidean norm of the selected residual column at each step.
  std::vector<double> residual_norms;
  bool stopped_early = false;
};

/// Successive projection: pick the residual column of largest squared norm
/// (ties to the smallest index), project every column onto its orthogonal
/// complement, repeat k times. Stops early once the largest residual squared
/// norm falls to zero_tol² times the initial largest squared norm.
SpaResult successive_projection(const linalg::DenseMatrix& m, std::size_t k,
                                double zero_tol = 1e-9);

}  // namespace splp::spa
