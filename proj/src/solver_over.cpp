#include "augblock/solver_over.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "augblock/errors.hpp"
#include "augblock/parallel.hpp"
#include "block_ops.hpp"

namespace augblock {

using detail::block_sum;
using detail::project_unit;

namespace {

void require_column(const AugmentedSystem& system) {
  if (system.orientation() != Orientation::column)
    throw DimensionMismatch("overdetermined solver needs a column-oriented augmented system");
}

}  // namespace

SchurS assemble_S_over(const AugmentedSystem& system, const Options& opts) {
  require_column(system);
  const std::size_t m = system.m();
  const std::size_t q = system.q();
  if (q == 0) return {};

  DenseMatrix s(q, q);
  parallel_for(q, opts.threads, [&](std::size_t k) {
    // Column k of Y^T (I - Pbar) Y.
    const Vector pe = project_unit(system, m + k, 1);
    auto col = s.col(k);
    for (std::size_t r = 0; r < q; ++r) col[r] = (r == k ? 1.0 : 0.0) - pe[m + r];
  });
  return SchurS(std::move(s), opts.tol.rank);
}

OverSolver::OverSolver(AugmentedSystem system, Options opts)
    : system_(std::move(system)), opts_(opts) {
  require_column(system_);
  schur_ = assemble_S_over(system_, opts_);
}

Vector OverSolver::range_projector_apply(std::span<const double> v) const {
  const std::size_t len = system_.augmented_extent();
  if (v.size() != len) throw DimensionMismatch("range_projector_apply: expected length m + q");
  return block_sum(system_.block_count(), len, opts_.threads,
                   [&](std::size_t i) { return system_.factorization(i).apply_projector(v); });
}

Vector OverSolver::apply_gram_inverse(std::span<const double> w) const {
  if (w.size() != n()) throw DimensionMismatch("apply_gram_inverse: expected length n");
  const auto& part = system_.partition();
  Vector out(n(), 0.0);
  parallel_for(system_.block_count(), opts_.threads, [&](std::size_t i) {
    const Vector gi =
        system_.factorization(i).apply_gram_inverse(w.subspan(part.begin(i), part.size(i)));
    std::copy(gi.begin(), gi.end(), out.begin() + static_cast<std::ptrdiff_t>(part.begin(i)));
  });
  return out;
}

Vector OverSolver::blockwise_normal_solve(std::span<const double> b) const {
  if (b.size() != m()) throw DimensionMismatch("blockwise_normal_solve: expected length m");
  const Vector padded = stack(system_.partition().row_perm().apply(b), Vector(q(), 0.0));
  const auto& part = system_.partition();
  Vector y(n(), 0.0);
  // (Abar^i^T Abar^i)^{-1} (A^i)^T b = (Abar^i)^+ [b; 0].
  parallel_for(system_.block_count(), opts_.threads, [&](std::size_t i) {
    const Vector yi = system_.factorization(i).apply_pinv(padded);
    std::copy(yi.begin(), yi.end(), y.begin() + static_cast<std::ptrdiff_t>(part.begin(i)));
  });
  return y;
}

OverSolution OverSolver::solve(std::span<const double> b) const {
  if (b.size() != m()) throw DimensionMismatch("solve_over: expected length m");
  const auto& part = system_.partition();
  const Vector b_perm = part.row_perm().apply(b);

  OverSolution out;
  out.y = blockwise_normal_solve(b);
  out.x_reordered = out.y;
  if (q() > 0) {
    // z = -S^{-1} Gamma y;  x = y + G Gamma^T S^{-1} Gamma y = y - G Gamma^T z.
    const Vector gamma_y = matvec(system_.gamma(), out.y);
    out.z = schur_.solve(gamma_y);
    for (double& v : out.z) v = -v;
    const Vector correction =
        apply_gram_inverse(matvec(system_.gamma(), out.z, Transpose::yes));
    for (std::size_t k = 0; k < n(); ++k) out.x_reordered[k] -= correction[k];
    out.gamma_y_plus_sz_norm = norm2(add(gamma_y, matvec(schur_.matrix(), out.z)));
  }
  out.x_ls = part.col_perm().apply_inverse(out.x_reordered);

  const Vector r = subtract(matvec(system_.original(), out.x_reordered), b_perm);
  out.residual_norm = norm2(r);
  const double a_norm = system_.original().frobenius_norm();
  const double scale = a_norm * (a_norm * norm2(out.x_reordered) + norm2(b_perm));
  const double normal = norm2(matvec(system_.original(), r, Transpose::yes));
  out.normal_residual = scale > 0.0 ? normal / scale : normal;

  if (opts_.enforce_certificates) {
    const double tol = opts_.tol.sol;
    const double b2 = dot(b_perm, b_perm);
    const double phi_val = phi(b, out.y, out.z);
    const double gap = std::abs(phi_val - out.residual_norm * out.residual_norm) / std::max(1.0, b2);
    const double gz_bound = tol * std::max(1.0, norm2(out.y));
    if (out.gamma_y_plus_sz_norm > gz_bound || out.normal_residual > tol || gap > tol) {
      std::ostringstream msg;
      msg << "overdetermined certificate failed: ||Gamma y + S z|| " << out.gamma_y_plus_sz_norm
          << ", normal-equation residual " << out.normal_residual << ", residual identity gap "
          << gap << " (sol_tol " << tol << ")";
      throw CertificateFailure(msg.str());
    }
  }
  return out;
}

std::pair<Vector, Vector> OverSolver::general_f_solve(std::span<const double> b,
                                                      std::span<const double> f) const {
  if (b.size() != m()) throw DimensionMismatch("general_f_solve: expected b of length m");
  if (f.size() != q()) throw DimensionMismatch("general_f_solve: expected f of length q");
  const auto& part = system_.partition();
  const Vector rhs = stack(part.row_perm().apply(b), f);

  // y = G (A^T b + Gamma^T f) = blockwise (Abar^i)^+ [b; f].
  Vector y(n(), 0.0);
  parallel_for(system_.block_count(), opts_.threads, [&](std::size_t i) {
    const Vector yi = system_.factorization(i).apply_pinv(rhs);
    std::copy(yi.begin(), yi.end(), y.begin() + static_cast<std::ptrdiff_t>(part.begin(i)));
  });

  // z = S^{-1} (B^T b + S f) = S^{-1} B^T b + f, with B^T b = Y^T (I - Pbar) [b; 0].
  Vector z;
  if (q() > 0) {
    const Vector padded = stack(part.row_perm().apply(b), Vector(q(), 0.0));
    const Vector pb = range_projector_apply(padded);
    Vector bt_b(q());
    for (std::size_t k = 0; k < q(); ++k) bt_b[k] = -pb[m() + k];
    z = add(schur_.solve(bt_b), f);
  }
  return {std::move(y), std::move(z)};
}

double OverSolver::phi(std::span<const double> b, std::span<const double> y,
                       std::span<const double> z) const {
  if (b.size() != m() || y.size() != n() || z.size() != q())
    throw DimensionMismatch("phi: expected b, y, z of lengths m, n, q");
  const std::size_t len = system_.augmented_extent();

  // [A; Gamma] y + W z - [b; 0], with W z = (I - Pbar) [0; z].
  Vector r = matvec(system_.augmented(), y);
  if (q() > 0) {
    Vector padded_z(len, 0.0);
    std::copy(z.begin(), z.end(), padded_z.begin() + static_cast<std::ptrdiff_t>(m()));
    const Vector pz = range_projector_apply(padded_z);
    for (std::size_t k = 0; k < len; ++k) r[k] += padded_z[k] - pz[k];
  }
  const Vector b_perm = system_.partition().row_perm().apply(b);
  for (std::size_t k = 0; k < m(); ++k) r[k] -= b_perm[k];
  return dot(r, r);
}

ResidualIdentityReport OverSolver::residual_identity_check(const OverSolution& sol,
                                                           std::span<const double> b,
                                                           std::optional<double> min_residual_sq,
                                                           double tol) const {
  ResidualIdentityReport rep;
  rep.phi = phi(b, sol.y, sol.z);
  const Vector r = subtract(matvec(system_.original(), sol.x_reordered),
                            system_.partition().row_perm().apply(b));
  rep.residual_squared = dot(r, r);
  const double b2 = dot(b, b);
  rep.identity_gap = std::abs(rep.phi - rep.residual_squared) / std::max(1.0, b2);
  rep.passed = rep.identity_gap <= tol;
  if (min_residual_sq) {
    rep.lower_bound_slack = rep.phi - *min_residual_sq;
    rep.passed = rep.passed && *rep.lower_bound_slack >= -tol * b2;
  }
  return rep;
}

DenseMatrix OverSolver::w_matrix() const {
  const std::size_t len = system_.augmented_extent();
  DenseMatrix w(len, q());
  parallel_for(q(), opts_.threads, [&](std::size_t k) {
    const Vector pe = project_unit(system_, m() + k, 1);
    auto col = w.col(k);
    for (std::size_t j = 0; j < len; ++j) col[j] = (j == m() + k ? 1.0 : 0.0) - pe[j];
  });
  return w;
}

}  // namespace augblock
