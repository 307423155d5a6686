#pragma once

// Random small LPs  min cᵀy s.t. Ay ≥ b  with integer data in [-3, 3], so
// degenerate vertices and ties are common. A always has full column rank.

#include <cmath>
#include <vector>

#include "splp/linalg.hpp"
#include "splp/rng.hpp"
#include "vertex_enumeration.hpp"

namespace fixture {

struct RandomLp {
  splp::linalg::DenseMatrix a;
  std::vector<double> b;
  std::vector<double> c;
};

/// r ∈ [1, 3], m ∈ [r, 8]. With force_feasible, b = A·y₀ − slack for an integer y₀.
inline RandomLp random_lp(splp::Rng& rng, bool force_feasible) {
  for (;;) {
    const std::size_t r = 1 + static_cast<std::size_t>(splp::uniform01(rng) * 3);
    const std::size_t m = r + static_cast<std::size_t>(splp::uniform01(rng) * static_cast<double>(9 - r));
    RandomLp lp{splp::linalg::DenseMatrix(m, r), std::vector<double>(m), std::vector<double>(r)};
    auto draw = [&] { return std::floor(splp::uniform01(rng) * 7.0) - 3.0; };
    for (double& v : lp.a.data()) v = draw();
    for (double& v : lp.c) v = draw();
    if (force_feasible) {
      std::vector<double> y0(r);
      for (double& v : y0) v = draw();
      const auto ay = splp::linalg::multiply(lp.a, y0);
      for (std::size_t i = 0; i < m; ++i) lp.b[i] = ay[i] - std::floor(splp::uniform01(rng) * 3.0);
    } else {
      for (double& v : lp.b) v = draw();
    }
    if (oracle::rank_of(lp.a) == r) return lp;
  }
}

}  // namespace fixture
