#include "splp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "splp/error.hpp"

namespace splp::linalg {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw InvalidInput("DenseMatrix: data length does not match shape");
  }
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidInput("DenseMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> values) {
  DenseMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

std::vector<double> DenseMatrix::col(std::size_t j) const {
  std::vector<double> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

void DenseMatrix::set_col(std::size_t j, std::span<const double> values) {
  if (values.size() != rows_) throw InvalidInput("set_col: length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidInput("multiply: inner dimensions differ");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ci = c.row(i);
    const auto ai = a.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = ai[k];
      if (aik == 0.0) continue;
      const auto bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

DenseMatrix multiply_at_b(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows()) throw InvalidInput("multiply_at_b: row counts differ");
  DenseMatrix c(a.cols(), b.cols());
  for (std::size_t k = 0; k < a.rows(); ++k) {
    const auto ak = a.row(k);
    const auto bk = b.row(k);
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double aki = ak[i];
      if (aki == 0.0) continue;
      auto ci = c.row(i);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aki * bk[j];
    }
  }
  return c;
}

std::vector<double> multiply(const DenseMatrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw InvalidInput("multiply: vector length mismatch");
  std::vector<double> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

double norm_inf(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_abs(const DenseMatrix& a) { return norm_inf(a.data()); }

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidInput("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

double max_asymmetry(const DenseMatrix& a) {
  if (a.rows() != a.cols()) throw InvalidInput("max_asymmetry: matrix not square");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      m = std::max(m, std::abs(a(i, j) - a(j, i)));
  return m;
}

bool all_finite(const DenseMatrix& a) {
  return std::all_of(a.data().begin(), a.data().end(),
                     [](double x) { return std::isfinite(x); });
}

DenseMatrix project_out(const DenseMatrix& r, std::span<const double> p) {
  if (p.size() != r.rows()) throw InvalidInput("project_out: p length != rows of R");
  const double pp = dot(p, p);
  if (!(pp > 0.0)) throw InvalidInput("project_out: zero projection vector");

  std::vector<double> w(r.cols(), 0.0);
  for (std::size_t i = 0; i < r.rows(); ++i) {
    const auto ri = r.row(i);
    for (std::size_t j = 0; j < r.cols(); ++j) w[j] += p[i] * ri[j];
  }
  for (double& x : w) x /= pp;

  DenseMatrix out = r;
  for (std::size_t i = 0; i < r.rows(); ++i) {
    auto oi = out.row(i);
    for (std::size_t j = 0; j < r.cols(); ++j) oi[j] -= p[i] * w[j];
  }
  return out;
}

std::vector<double> singular_values(const DenseMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) throw InvalidInput("singular_values: empty matrix");
  const DenseMatrix gram = multiply_at_b(m, m);
  DenseMatrix sym = gram;
  for (std::size_t i = 0; i < sym.rows(); ++i)
    for (std::size_t j = i + 1; j < sym.cols(); ++j)
      sym(i, j) = sym(j, i) = 0.5 * (gram(i, j) + gram(j, i));
  auto eig = symmetric_eigen(sym, std::numeric_limits<double>::infinity());
  std::vector<double> out(eig.values.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::sqrt(std::max(0.0, eig.values[i]));
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

// ---------------------------------------------------------------------------
// Block subspace iteration.

namespace {

// Block of vectors stored one per row: block(j, :) is the j-th vector.
using Block = DenseMatrix;

// Modified Gram-Schmidt with one reorthogonalisation pass. Columns that
// collapse numerically are replaced by fresh random directions.
void orthonormalize(Block& q, Rng& rng) {
  const std::size_t b = q.rows();
  const std::size_t n = q.cols();
  for (std::size_t j = 0; j < b; ++j) {
    auto qj = q.row(j);
    double before = norm2(qj);
    for (int attempt = 0;; ++attempt) {
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < j; ++i) {
          const auto qi = q.row(i);
          const double h = dot(qi, qj);
          for (std::size_t t = 0; t < n; ++t) qj[t] -= h * qi[t];
        }
      }
      const double after = norm2(qj);
      if (after > 1e-10 * std::max(before, 1e-300) && after > 0.0) {
        for (double& x : qj) x /= after;
        break;
      }
      if (attempt > 8) throw ConvergenceFailure("orthonormalize: block rank collapse", after);
      for (double& x : qj) x = standard_normal(rng);
      before = norm2(qj);
    }
  }
}

// z(j, :) = (A + shift I) q(j, :)
Block apply(const DenseMatrix& a, const Block& q, double shift) {
  const std::size_t b = q.rows();
  const std::size_t n = q.cols();
  Block z(b, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ai = a.row(i);
    for (std::size_t j = 0; j < b; ++j) z(j, i) = dot(ai, q.row(j)) + shift * q(j, i);
  }
  return z;
}

// out(j, :) = Σ_t w(t, j) · v(t, :)
Block combine(const Block& v, const DenseMatrix& w) {
  Block out(w.cols(), v.cols());
  for (std::size_t t = 0; t < v.rows(); ++t) {
    const auto vt = v.row(t);
    for (std::size_t j = 0; j < w.cols(); ++j) {
      const double c = w(t, j);
      if (c == 0.0) continue;
      auto oj = out.row(j);
      for (std::size_t i = 0; i < v.cols(); ++i) oj[i] += c * vt[i];
    }
  }
  return out;
}

struct SubspaceOutcome {
  SpectralEmbedding pairs;
  std::vector<double> block_values;  // every Ritz value of the final block, unshifted
};

// Indices of `values` ranked by the requested notion of "largest".
std::vector<std::size_t> rank_values(const std::vector<double>& values, EigenOrder order) {
  std::vector<std::size_t> idx(values.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  if (order == EigenOrder::magnitude) {
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
      return std::abs(values[x]) > std::abs(values[y]);
    });
  }
  return idx;  // symmetric_eigen already sorts algebraically
}

SpectralEmbedding select_pairs(const DenseMatrix& vectors_by_column, const std::vector<double>& values,
                               std::vector<std::size_t> chosen, double value_offset) {
  std::stable_sort(chosen.begin(), chosen.end(),
                   [&](std::size_t x, std::size_t y) { return values[x] > values[y]; });
  SpectralEmbedding out;
  out.vectors = DenseMatrix(vectors_by_column.rows(), chosen.size());
  out.values.resize(chosen.size());
  for (std::size_t j = 0; j < chosen.size(); ++j) {
    out.values[j] = values[chosen[j]] - value_offset;
    for (std::size_t i = 0; i < vectors_by_column.rows(); ++i)
      out.vectors(i, j) = vectors_by_column(i, chosen[j]);
  }
  return out;
}

SubspaceOutcome subspace_iteration(const DenseMatrix& a, std::size_t k, Rng& rng, double shift,
                                   double threshold, std::size_t max_iter, EigenOrder order) {
  const std::size_t n = a.rows();
  const std::size_t b = std::min(n, k + std::max<std::size_t>(k, 8));

  Block q(b, n);
  for (double& x : q.data()) x = standard_normal(rng);
  orthonormalize(q, rng);

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    const Block z = apply(a, q, shift);

    DenseMatrix h(b, b);
    for (std::size_t i = 0; i < b; ++i)
      for (std::size_t j = i; j < b; ++j) {
        const double v = 0.5 * (dot(q.row(i), z.row(j)) + dot(q.row(j), z.row(i)));
        h(i, j) = h(j, i) = v;
      }
    const SpectralEmbedding ritz = symmetric_eigen(h, std::numeric_limits<double>::infinity());
    const auto ranked = rank_values(ritz.values, order);

    const Block x = combine(q, ritz.vectors);
    const Block ax = combine(z, ritz.vectors);

    double worst = 0.0;
    for (std::size_t t = 0; t < k; ++t) {
      const std::size_t j = ranked[t];
      const double theta = ritz.values[j];
      double r2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = ax(j, i) - theta * x(j, i);
        r2 += d * d;
      }
      worst = std::max(worst, std::sqrt(r2));
    }
    best = std::min(best, worst);

    if (worst <= threshold) {
      DenseMatrix by_column(n, b);
      for (std::size_t j = 0; j < b; ++j) {
        const double nrm = norm2(x.row(j));
        for (std::size_t i = 0; i < n; ++i) by_column(i, j) = x(j, i) / nrm;
      }
      SubspaceOutcome out;
      out.pairs = select_pairs(by_column, ritz.values,
                               std::vector<std::size_t>(ranked.begin(), ranked.begin() + static_cast<long>(k)),
                               shift);
      out.block_values.resize(b);
      for (std::size_t j = 0; j < b; ++j) out.block_values[j] = ritz.values[j] - shift;
      return out;
    }

    q = combine(z, ritz.vectors);
    orthonormalize(q, rng);
  }
  throw ConvergenceFailure("top_k_eigs: subspace iteration did not converge after " +
                               std::to_string(max_iter) + " iterations",
                           best);
}

// Sign convention: largest-magnitude component of each eigenvector is positive.
void canonicalize_signs(DenseMatrix& vectors) {
  for (std::size_t j = 0; j < vectors.cols(); ++j) {
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < vectors.rows(); ++i) {
      const double v = std::abs(vectors(i, j));
      if (v > best + 1e-12) {
        best = v;
        arg = i;
      }
    }
    if (vectors(arg, j) < 0.0)
      for (std::size_t i = 0; i < vectors.rows(); ++i) vectors(i, j) = -vectors(i, j);
  }
}

}  // namespace

SpectralEmbedding top_k_eigs(const DenseMatrix& a, std::size_t k, Rng& rng,
                             const EigenOptions& options) {
  if (a.rows() != a.cols()) throw InvalidInput("top_k_eigs: matrix not square");
  const std::size_t n = a.rows();
  if (k < 1 || k > n) throw InvalidInput("top_k_eigs: k must lie in [1, n]");
  if (!all_finite(a)) throw InvalidInput("top_k_eigs: non-finite entries");
  if (max_asymmetry(a) > options.symmetry_tol) throw InvalidInput("top_k_eigs: matrix not symmetric");

  if (n <= options.dense_cutoff) {
    const SpectralEmbedding full = symmetric_eigen(a, options.symmetry_tol);
    const auto ranked = rank_values(full.values, options.order);
    return select_pairs(full.vectors, full.values,
                        std::vector<std::size_t>(ranked.begin(), ranked.begin() + static_cast<long>(k)),
                        0.0);
  }

  const std::size_t max_iter = options.max_iter == 0 ? 10 * n : options.max_iter;
  const double threshold = options.tol * std::max(1.0, max_abs(a) * static_cast<double>(n));

  // Unshifted iteration converges to the largest-magnitude part of the
  // spectrum. For algebraic ordering accept it only when the k-th Ritz value
  // dominates every magnitude left in the block; otherwise shift the spectrum
  // to be nonnegative (Gershgorin) and iterate again.
  SubspaceOutcome result = subspace_iteration(a, k, rng, 0.0, threshold, max_iter, options.order);
  if (options.order == EigenOrder::algebraic) {
    const std::size_t b = result.block_values.size();
    double smallest_magnitude = std::numeric_limits<double>::infinity();
    for (double v : result.block_values) smallest_magnitude = std::min(smallest_magnitude, std::abs(v));
    const bool certified = b == n || result.pairs.values[k - 1] > smallest_magnitude;
    if (!certified) {
      double lower = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) {
        double off = 0.0;
        for (std::size_t j = 0; j < n; ++j)
          if (j != i) off += std::abs(a(i, j));
        lower = std::min(lower, a(i, i) - off);
      }
      result = subspace_iteration(a, k, rng, std::max(0.0, -lower), threshold, max_iter,
                                  EigenOrder::algebraic);
    }
  }
  canonicalize_signs(result.pairs.vectors);
  return std::move(result.pairs);
}

}  // namespace splp::linalg
