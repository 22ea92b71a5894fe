#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "augblock/matrix.hpp"

namespace augblock {

inline constexpr double kDefaultRankTol = 1e-10;

/// Thin Householder QR of a tall matrix (rows >= cols), A = Q R.
///
/// Q is kept implicitly as the reflector sequence; R is cols x cols upper
/// triangular.
class HouseholderQR {
 public:
  HouseholderQR() = default;
  explicit HouseholderQR(DenseMatrix a);

  std::size_t rows() const noexcept { return qr_.rows(); }
  std::size_t cols() const noexcept { return qr_.cols(); }

  /// Upper triangular factor as a dense cols x cols matrix.
  DenseMatrix r() const;
  double r_diag(std::size_t k) const { return qr_(k, k); }

  /// First `cols` entries of Q^T v, where v has length rows.
  Vector apply_qt(std::span<const double> v) const;
  /// Q [w; 0], where w has length cols.
  Vector apply_q(std::span<const double> w) const;
  /// Solves R x = w.
  Vector solve_r(std::span<const double> w) const;
  /// Solves R^T x = w.
  Vector solve_rt(std::span<const double> w) const;

 private:
  DenseMatrix qr_;          // R on and above the diagonal, reflector tails below
  std::vector<double> tau_;
};

/// Cholesky factor L of a symmetric positive definite matrix, S = L L^T.
///
/// Construction fails with NotPositiveDefinite when a pivot d_k satisfies
/// d_k <= pivot_tol * max_i S_ii.
class Cholesky {
 public:
  Cholesky() = default;
  Cholesky(const DenseMatrix& s, double pivot_tol);

  std::size_t size() const noexcept { return l_.rows(); }
  const DenseMatrix& lower() const noexcept { return l_; }
  Vector solve(std::span<const double> b) const;

 private:
  DenseMatrix l_;
};

enum class Orientation { row, column };

/// Implicit pseudoinverse and projector operators of one full-rank block.
///
/// Row orientation: the block M is m_i x nbar with full row rank; Householder
/// QR of M^T gives M^+ v = Q R^{-T} v and the row-space projector M^+ M = Q Q^T.
/// Column orientation: M is mbar x n_i with full column rank; QR of M gives
/// M^+ v = R^{-1} Q^T v and the range projector M M^+ = Q Q^T.
///
/// Immutable after construction; every apply is const and may run
/// concurrently.
class BlockFactorization {
 public:
  BlockFactorization(DenseMatrix block, Orientation orientation, double rank_tol = kDefaultRankTol);

  Orientation orientation() const noexcept { return orientation_; }
  const DenseMatrix& block() const noexcept { return block_; }
  /// Row count of M (row orientation) or column count (column orientation).
  std::size_t rank() const noexcept { return qr_.cols(); }

  /// M^+ v.
  Vector apply_pinv(std::span<const double> v) const;
  /// Orthogonal projector onto R(M^T) (row) or R(M) (column) applied to v.
  Vector apply_projector(std::span<const double> v) const;
  /// (M M^T)^{-1} w (row) or (M^T M)^{-1} w (column).
  Vector apply_gram_inverse(std::span<const double> w) const;

 private:
  DenseMatrix block_;
  Orientation orientation_;
  HouseholderQR qr_;
};

BlockFactorization factorize_block(const DenseMatrix& m, Orientation orientation,
                                   double rank_tol = kDefaultRankTol);

}  // namespace augblock
