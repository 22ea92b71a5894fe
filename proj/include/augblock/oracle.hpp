#pragma once

#include <cstddef>
#include <span>

#include "augblock/matrix.hpp"

// Dense reference solutions computed from a singular value decomposition.
// Shares no factorization code with the block solvers; used as ground truth.
namespace augblock::oracle {

inline constexpr double kDefaultOracleRankTol = 1e-13;

/// M = U diag(sigma) V^T (thin).
struct DenseDecomposition {
  DenseMatrix u;
  Vector singular_values;  ///< Non-increasing, non-negative.
  DenseMatrix v;
  double rank_tol = kDefaultOracleRankTol;
  /// Number of singular values above rank_tol * sigma_max.
  std::size_t rank = 0;
};

DenseDecomposition decompose(const DenseMatrix& m, double rank_tol = kDefaultOracleRankTol);

struct LeastSquaresResult {
  Vector x;
  std::size_t rank = 0;
  /// ||M x - b||^2.
  double residual_squared = 0.0;
};

/// M^+ b: the minimal-norm element of the least-squares solution set.
LeastSquaresResult minnorm_ls_solve(const DenseMatrix& m, std::span<const double> b,
                                    double rank_tol = kDefaultOracleRankTol);

/// Moore-Penrose pseudoinverse with singular values below rank_tol * sigma_max
/// treated as zero.
DenseMatrix dense_pinv(const DenseMatrix& m, double rank_tol = kDefaultOracleRankTol);

/// sigma_max / sigma_min, infinite for rank-deficient input.
double condition_number(const DenseMatrix& m);

}  // namespace augblock::oracle
