#pragma once

#include <span>

#include "augblock/augment.hpp"
#include "augblock/matrix.hpp"
#include "augblock/options.hpp"
#include "augblock/schur.hpp"

namespace augblock {

struct UnderSolution {
  /// Solution of the original system, in original column ordering.
  Vector x;
  /// Augmentation variables; zero up to rounding for a full row rank A.
  Vector y;
  /// x in the reordered column ordering (first n entries of the augmented
  /// minimal-norm solution).
  Vector x_reordered;
  double residual_norm = 0.0;
  /// residual_norm / ||b||, or residual_norm itself when b = 0.
  double relative_residual = 0.0;
  double y_norm = 0.0;
};

/// Four n x n blocks of the dense projector Pbar onto R(Abar^T) for a
/// sign-alternating system, plus the largest entrywise gap to the closed forms
/// (1/2) sum P_i and (1/2) sum (-1)^{i+1} P_i.
struct PbarBlocks {
  DenseMatrix p11, p12, p21, p22;
  double max_deviation = 0.0;
};

/// S = Y (I - P) Y^T, one column per projector application on Y^T e_k.
/// Throws NotPositiveDefinite when the Cholesky factorization fails, which
/// happens when A lacks full row rank.
SchurS assemble_S_under(const AugmentedSystem& system, const Options& opts = {});

/// I_n - (1/2) sum_i P_i with P_i the row-space projector of the
/// un-augmented block A_i. Equals S for sign-alternating systems.
DenseMatrix sign_alternating_S(const AugmentedSystem& system, const Options& opts = {});

/// Minimal-norm solver for a full row rank underdetermined system through its
/// row-augmented form [A Gamma; B S] [x; y] = [b; f].
///
/// All public inputs b use the original row ordering; x is returned in the
/// original column ordering.
class UnderSolver {
 public:
  explicit UnderSolver(AugmentedSystem system, Options opts = {});

  const AugmentedSystem& system() const noexcept { return system_; }
  const SchurS& schur() const noexcept { return schur_; }
  const Options& options() const noexcept { return opts_; }
  std::size_t m() const noexcept { return system_.m(); }
  std::size_t n() const noexcept { return system_.n(); }
  std::size_t q() const noexcept { return system_.q(); }

  /// P v = sum_i Abar_i^+ (Abar_i v), v of length n + q.
  Vector projector_sum_apply(std::span<const double> v) const;
  /// sum_i Abar_i^+ b^i for b already in reordered row ordering.
  Vector pinv_sum_apply(std::span<const double> b_reordered) const;
  /// f = -Y Abar^+ b.
  Vector rhs_f(std::span<const double> b) const;

  UnderSolution solve(std::span<const double> b) const;

  /// Dense block split of Pbar; sign-alternating systems only.
  PbarBlocks pbar_block_decomposition() const;

  /// Dense (n + q) x (n + q) projector P. Diagnostic use.
  DenseMatrix projector_matrix() const;
  /// W = Y (I - P) as a dense q x (n + q) matrix. Diagnostic use.
  DenseMatrix w_matrix() const;

 private:
  AugmentedSystem system_;
  Options opts_;
  SchurS schur_;
};

}  // namespace augblock
