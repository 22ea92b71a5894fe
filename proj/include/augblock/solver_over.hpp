#pragma once

#include <optional>
#include <span>
#include <utility>

#include "augblock/augment.hpp"
#include "augblock/matrix.hpp"
#include "augblock/options.hpp"
#include "augblock/schur.hpp"

namespace augblock {

struct OverSolution {
  /// Least-squares solution in original column ordering.
  Vector x_ls;
  Vector x_reordered;
  /// Minimal-norm solution [y; z] of the augmented problem with f = 0
  /// (y in reordered column ordering).
  Vector y;
  Vector z;
  double residual_norm = 0.0;
  double gamma_y_plus_sz_norm = 0.0;
  /// ||A^T (A x - b)|| / (||A||_F (||A||_F ||x|| + ||b||)).
  double normal_residual = 0.0;
};

struct ResidualIdentityReport {
  double phi = 0.0;
  double residual_squared = 0.0;
  /// |phi - ||A x - b||^2| / max(1, ||b||^2).
  double identity_gap = 0.0;
  /// phi - min ||A x - b||^2, when the minimum was supplied.
  std::optional<double> lower_bound_slack;
  bool passed = true;
};

/// S = Y^T (I - Pbar) Y with Pbar the projector onto R(Abar).
SchurS assemble_S_over(const AugmentedSystem& system, const Options& opts = {});

/// Least-squares solver for a full column rank overdetermined problem through
/// its column-augmented form [A B; Gamma S] [y; z] ~ [b; f].
///
/// All public inputs b use the original row ordering; x_ls is returned in the
/// original column ordering, y and z in the augmented coordinates.
class OverSolver {
 public:
  explicit OverSolver(AugmentedSystem system, Options opts = {});

  const AugmentedSystem& system() const noexcept { return system_; }
  const SchurS& schur() const noexcept { return schur_; }
  const Options& options() const noexcept { return opts_; }
  std::size_t m() const noexcept { return system_.m(); }
  std::size_t n() const noexcept { return system_.n(); }
  std::size_t q() const noexcept { return system_.q(); }

  /// Pbar v = sum_i Abar^i (Abar^i)^+ v, v of length m + q.
  Vector range_projector_apply(std::span<const double> v) const;
  /// G w = (Abar^T Abar)^{-1} w, applied block by block.
  Vector apply_gram_inverse(std::span<const double> w) const;

  /// y^i = (Abar^i^T Abar^i)^{-1} (A^i)^T b for every block.
  Vector blockwise_normal_solve(std::span<const double> b) const;

  OverSolution solve(std::span<const double> b) const;

  /// Minimal-norm solution (y, z) of the augmented problem for an arbitrary f.
  std::pair<Vector, Vector> general_f_solve(std::span<const double> b,
                                            std::span<const double> f) const;

  /// phi(y, z) = ||[A B; Gamma S][y; z] - [b; 0]||^2 with B and S read from
  /// W = (I - Pbar) Y.
  double phi(std::span<const double> b, std::span<const double> y,
             std::span<const double> z) const;

  ResidualIdentityReport residual_identity_check(const OverSolution& sol,
                                                 std::span<const double> b,
                                                 std::optional<double> min_residual_squared = {},
                                                 double tol = 1e-10) const;

  /// W = (I - Pbar) Y as a dense (m + q) x q matrix. Diagnostic use.
  DenseMatrix w_matrix() const;

 private:
  AugmentedSystem system_;
  Options opts_;
  SchurS schur_;
};

}  // namespace augblock
