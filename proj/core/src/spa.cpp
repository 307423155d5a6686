#include "splp/spa.hpp"

#include <cmath>

#include "splp/error.hpp"

namespace splp::spa {

namespace {

std::vector<double> column_sq_norms(const linalg::DenseMatrix& r) {
  std::vector<double> out(r.cols(), 0.0);
  for (std::size_t i = 0; i < r.rows(); ++i) {
    const auto ri = r.row(i);
    for (std::size_t j = 0; j < r.cols(); ++j) out[j] += ri[j] * ri[j];
  }
  return out;
}

}  // namespace

SpaResult successive_projection(const linalg::DenseMatrix& m, std::size_t k, double zero_tol) {
  if (k > m.cols()) throw InvalidInput("successive_projection: k exceeds column count");
  if (!linalg::all_finite(m)) throw InvalidInput("successive_projection: non-finite input");

  SpaResult out;
  linalg::DenseMatrix r = m;
  double initial = -1.0;
  for (std::size_t step = 0; step < k; ++step) {
    const auto norms = column_sq_norms(r);
    std::size_t arg = 0;
    for (std::size_t j = 1; j < norms.size(); ++j)
      if (norms[j] > norms[arg]) arg = j;
    if (initial < 0.0) initial = norms.empty() ? 0.0 : norms[arg];
    if (norms.empty() || norms[arg] <= zero_tol * zero_tol * initial || norms[arg] == 0.0) {
      out.stopped_early = true;
      break;
    }
    out.indices.push_back(arg);
    out.residual_norms.push_back(std::sqrt(norms[arg]));
    r = linalg::project_out(r, r.col(arg));
  }
  return out;
}

}  // namespace splp::spa
