#include "splp/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "splp/error.hpp"

namespace splp::eval {

namespace {

// Kuhn's augmenting-path matching restricted to edges with cost ≤ limit.
bool try_augment(const linalg::DenseMatrix& cost, double limit, std::size_t row,
                 std::vector<bool>& seen, std::vector<std::size_t>& match_of_col) {
  const std::size_t k = cost.cols();
  for (std::size_t c = 0; c < k; ++c) {
    if (cost(row, c) > limit || seen[c]) continue;
    seen[c] = true;
    if (match_of_col[c] == k || try_augment(cost, limit, match_of_col[c], seen, match_of_col)) {
      match_of_col[c] = row;
      return true;
    }
  }
  return false;
}

bool perfect_matching(const linalg::DenseMatrix& cost, double limit,
                      std::vector<std::size_t>& assignment) {
  const std::size_t k = cost.rows();
  std::vector<std::size_t> match_of_col(k, k);
  for (std::size_t r = 0; r < k; ++r) {
    std::vector<bool> seen(k, false);
    if (!try_augment(cost, limit, r, seen, match_of_col)) return false;
  }
  assignment.assign(k, 0);
  for (std::size_t c = 0; c < k; ++c) assignment[match_of_col[c]] = c;
  return true;
}

}  // namespace

std::vector<std::size_t> bottleneck_assignment(const linalg::DenseMatrix& cost) {
  if (cost.rows() != cost.cols()) throw InvalidInput("bottleneck_assignment: cost matrix not square");
  std::vector<double> levels(cost.data().begin(), cost.data().end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::size_t lo = 0;
  std::size_t hi = levels.size() - 1;
  std::vector<std::size_t> best;
  perfect_matching(cost, levels[hi], best);
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    std::vector<std::size_t> candidate;
    if (perfect_matching(cost, levels[mid], candidate)) {
      hi = mid;
      best = std::move(candidate);
    } else {
      lo = mid + 1;
    }
  }
  return best;
}

EvaluationResult entrywise_error(const linalg::DenseMatrix& theta_hat,
                                 const linalg::DenseMatrix& theta) {
  if (theta_hat.rows() != theta.rows() || theta_hat.cols() != theta.cols())
    throw InvalidInput("entrywise_error: shape mismatch");
  const std::size_t n = theta.rows();
  const std::size_t k = theta.cols();

  linalg::DenseMatrix cost(k, k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l)
        cost(j, l) = std::max(cost(j, l), std::abs(theta_hat(i, j) - theta(i, l)));

  EvaluationResult out;
  if (k <= 8) {
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    double best = std::numeric_limits<double>::infinity();
    do {
      double worst = 0.0;
      for (std::size_t j = 0; j < k && worst < best; ++j) worst = std::max(worst, cost(j, perm[j]));
      if (worst < best) {
        best = worst;
        out.permutation = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    out.permutation = bottleneck_assignment(cost);
  }

  out.per_column_errors.resize(k);
  out.error = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    out.per_column_errors[j] = cost(j, out.permutation[j]);
    out.error = std::max(out.error, out.per_column_errors[j]);
  }
  return out;
}

ComplexSet binarize(const linalg::DenseMatrix& theta_hat, double threshold) {
  ComplexSet cs;
  for (std::size_t j = 0; j < theta_hat.cols(); ++j) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < theta_hat.rows(); ++i)
      if (theta_hat(i, j) >= threshold) members.push_back(i);
    if (members.empty()) continue;
    cs.complexes.push_back(std::move(members));
    cs.merged_from.push_back(1);
  }
  return cs;
}

double overlap_score(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  if (a.empty() || b.empty()) return 0.0;
  std::size_t common = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  const double c = static_cast<double>(common);
  return c * c / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

ComplexSet merge_complexes(ComplexSet cs, double overlap_threshold) {
  if (!(overlap_threshold > 0.0 && overlap_threshold <= 1.0))
    throw InvalidInput("merge_complexes: threshold must lie in (0, 1]");
  if (cs.merged_from.size() != cs.complexes.size()) cs.merged_from.assign(cs.complexes.size(), 1);
  for (auto& c : cs.complexes) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }

  for (;;) {
    const std::size_t m = cs.complexes.size();
    double best = -1.0;
    std::size_t bi = 0;
    std::size_t bj = 0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        const double w = overlap_score(cs.complexes[i], cs.complexes[j]);
        if (w >= overlap_threshold && w > best) {
          best = w;
          bi = i;
          bj = j;
        }
      }
    if (best < 0.0) break;

    std::vector<std::size_t> merged;
    std::set_union(cs.complexes[bi].begin(), cs.complexes[bi].end(), cs.complexes[bj].begin(),
                   cs.complexes[bj].end(), std::back_inserter(merged));
    cs.complexes[bi] = std::move(merged);
    cs.merged_from[bi] += cs.merged_from[bj];
    cs.complexes.erase(cs.complexes.begin() + static_cast<long>(bj));
    cs.merged_from.erase(cs.merged_from.begin() + static_cast<long>(bj));
  }
  return cs;
}

void write_complexes(std::ostream& out, const ComplexSet& cs,
                     const std::vector<std::string>& names) {
  for (const auto& c : cs.complexes) {
    for (std::size_t t = 0; t < c.size(); ++t) {
      if (t) out << '\t';
      if (c[t] < names.size()) out << names[c[t]];
      else out << c[t];
    }
    out << '\n';
  }
}

}  // namespace splp::eval
