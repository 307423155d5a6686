#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "splp/rng.hpp"

namespace splp::linalg {

/// Dense row-major matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  /// Takes ownership of `data`, which must hold rows * cols values in row-major order.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }

  std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  std::vector<double> col(std::size_t j) const;
  void set_col(std::size_t j, std::span<const double> values);

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  DenseMatrix transpose() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
/// aᵀ·b without materialising the transpose.
DenseMatrix multiply_at_b(const DenseMatrix& a, const DenseMatrix& b);
std::vector<double> multiply(const DenseMatrix& a, std::span<const double> x);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);
double norm_inf(std::span<const double> v);

double max_abs(const DenseMatrix& a);
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);
/// max |a(i,j) - a(j,i)|; a must be square.
double max_asymmetry(const DenseMatrix& a);
bool all_finite(const DenseMatrix& a);

/// Eigenpairs sorted by non-increasing eigenvalue; `vectors` columns are orthonormal.
struct SpectralEmbedding {
  DenseMatrix vectors;
  std::vector<double> values;
};

enum class EigenOrder {
  /// k algebraically largest eigenvalues.
  algebraic,
  /// k eigenvalues of largest magnitude (spans the range of a rank-k matrix).
  magnitude,
};

struct EigenOptions {
  EigenOrder order = EigenOrder::algebraic;
  double tol = 1e-8;
  /// 0 selects 10 * n.
  std::size_t max_iter = 0;
  double symmetry_tol = 1e-10;
  /// Matrices up to this order are handled by full cyclic Jacobi.
  std::size_t dense_cutoff = 64;
};

/// Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Values sorted non-increasing. Throws InvalidInput if `a` is not symmetric.
SpectralEmbedding symmetric_eigen(const DenseMatrix& a, double symmetry_tol = 1e-10);

/// The k largest eigenpairs of a symmetric matrix, "largest" per
/// `options.order`. Returned pairs are sorted by non-increasing eigenvalue.
///
/// Orders above `dense_cutoff` use block subspace iteration with Rayleigh-Ritz
/// extraction; the starting block is drawn from `rng`. Every returned pair
/// satisfies ‖A v − λ v‖₂ ≤ tol · max(1, ‖A‖_max · n).
///
/// Throws InvalidInput for asymmetric input or k outside [1, n], and
/// ConvergenceFailure after max_iter block iterations.
SpectralEmbedding top_k_eigs(const DenseMatrix& a, std::size_t k, Rng& rng,
                             const EigenOptions& options = {});

/// r − p (pᵀ r) / ‖p‖², i.e. the orthogonal projection of every column of r
/// onto the complement of p, without forming the projector.
DenseMatrix project_out(const DenseMatrix& r, std::span<const double> p);

/// Singular values, non-increasing, from the eigenvalues of mᵀm (clamped at 0).
std::vector<double> singular_values(const DenseMatrix& m);

}  // namespace splp::linalg
