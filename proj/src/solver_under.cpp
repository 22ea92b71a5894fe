#include "augblock/solver_under.hpp"

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

constexpr double kPbarTol = 1e-12;

void require_row(const AugmentedSystem& system) {
  if (system.orientation() != Orientation::row)
    throw DimensionMismatch("underdetermined solver needs a row-oriented augmented system");
}

// Row-space projectors of the un-augmented blocks A_i, dense n x n.
std::vector<DenseMatrix> original_block_projectors(const AugmentedSystem& sys, const Options& opts) {
  const std::size_t p = sys.block_count();
  const std::size_t n = sys.n();
  const auto& part = sys.partition();
  std::vector<DenseMatrix> out(p);
  parallel_for(p, opts.threads, [&](std::size_t i) {
    const BlockFactorization f(sys.original().dense_rows(part.begin(i), part.end(i)),
                               Orientation::row, opts.tol.rank);
    DenseMatrix proj(n, n);
    Vector e(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      e[k] = 1.0;
      const Vector c = f.apply_projector(e);
      std::copy(c.begin(), c.end(), proj.col(k).begin());
      e[k] = 0.0;
    }
    out[i] = std::move(proj);
  });
  return out;
}

}  // namespace

SchurS assemble_S_under(const AugmentedSystem& system, const Options& opts) {
  require_row(system);
  const std::size_t n = system.n();
  const std::size_t q = system.q();
  if (q == 0) return {};

  DenseMatrix s(q, q);
  parallel_for(q, opts.threads, [&](std::size_t k) {
    // Column k of Y (I - P) Y^T: the tail of e_{n+k} - P e_{n+k}.
    const Vector pe = project_unit(system, n + k, 1);
    auto col = s.col(k);
    for (std::size_t r = 0; r < q; ++r) col[r] = (r == k ? 1.0 : 0.0) - pe[n + r];
  });
  return SchurS(std::move(s), opts.tol.rank);
}

DenseMatrix sign_alternating_S(const AugmentedSystem& system, const Options& opts) {
  require_row(system);
  const std::size_t n = system.n();
  DenseMatrix s = DenseMatrix::identity(n);
  for (const auto& proj : original_block_projectors(system, opts))
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) s(i, j) -= 0.5 * proj(i, j);
  return s;
}

UnderSolver::UnderSolver(AugmentedSystem system, Options opts)
    : system_(std::move(system)), opts_(opts) {
  require_row(system_);
  schur_ = assemble_S_under(system_, opts_);
}

Vector UnderSolver::projector_sum_apply(std::span<const double> v) const {
  const std::size_t len = system_.augmented_extent();
  if (v.size() != len) throw DimensionMismatch("projector_sum_apply: expected length n + q");
  return block_sum(system_.block_count(), len, opts_.threads,
                   [&](std::size_t i) { return system_.factorization(i).apply_projector(v); });
}

Vector UnderSolver::pinv_sum_apply(std::span<const double> b) const {
  if (b.size() != m()) throw DimensionMismatch("pinv_sum_apply: expected length m");
  const auto& part = system_.partition();
  return block_sum(system_.block_count(), system_.augmented_extent(), opts_.threads,
                   [&](std::size_t i) {
                     return system_.factorization(i).apply_pinv(
                         b.subspan(part.begin(i), part.size(i)));
                   });
}

Vector UnderSolver::rhs_f(std::span<const double> b) const {
  if (b.size() != m()) throw DimensionMismatch("rhs_f: expected length m");
  const Vector u = pinv_sum_apply(system_.partition().row_perm().apply(b));
  Vector f(u.begin() + static_cast<std::ptrdiff_t>(n()), u.end());
  for (double& v : f) v = -v;
  return f;
}

UnderSolution UnderSolver::solve(std::span<const double> b) const {
  if (b.size() != m()) throw DimensionMismatch("solve_under: expected length m");
  const auto& part = system_.partition();
  const Vector b_perm = part.row_perm().apply(b);
  const std::size_t nn = n();

  // u = sum_i Abar_i^+ b^i; result = u - (I - P) Y^T S^{-1} Y u.
  Vector sol = pinv_sum_apply(b_perm);
  if (q() > 0) {
    const Vector t = schur_.solve(std::span<const double>(sol).subspan(nn));
    Vector w(system_.augmented_extent(), 0.0);
    std::copy(t.begin(), t.end(), w.begin() + static_cast<std::ptrdiff_t>(nn));
    const Vector pw = projector_sum_apply(w);
    for (std::size_t k = 0; k < sol.size(); ++k) sol[k] -= w[k] - pw[k];
  }

  UnderSolution out;
  out.x_reordered.assign(sol.begin(), sol.begin() + static_cast<std::ptrdiff_t>(nn));
  out.y.assign(sol.begin() + static_cast<std::ptrdiff_t>(nn), sol.end());
  out.x = part.col_perm().apply_inverse(out.x_reordered);

  const Vector r = subtract(matvec(system_.original(), out.x_reordered), b_perm);
  const double b_norm = norm2(b_perm);
  out.residual_norm = norm2(r);
  out.relative_residual = b_norm > 0.0 ? out.residual_norm / b_norm : out.residual_norm;
  out.y_norm = norm2(out.y);

  if (opts_.enforce_certificates) {
    const double y_bound = opts_.tol.sol * std::max(1.0, norm2(out.x));
    if (out.relative_residual > opts_.tol.sol || out.y_norm > y_bound) {
      std::ostringstream msg;
      msg << "underdetermined certificate failed: relative residual " << out.relative_residual
          << ", ||y|| " << out.y_norm << " (sol_tol " << opts_.tol.sol << ")";
      throw CertificateFailure(msg.str());
    }
  }
  return out;
}

DenseMatrix UnderSolver::projector_matrix() const {
  const std::size_t len = system_.augmented_extent();
  DenseMatrix p(len, len);
  parallel_for(len, opts_.threads, [&](std::size_t k) {
    const Vector c = project_unit(system_, k, 1);
    std::copy(c.begin(), c.end(), p.col(k).begin());
  });
  return p;
}

DenseMatrix UnderSolver::w_matrix() const {
  const std::size_t len = system_.augmented_extent();
  const std::size_t nn = n();
  DenseMatrix w(q(), len);
  // W = Y (I - P); row k is (I - P) e_{n+k} since P is symmetric.
  parallel_for(q(), opts_.threads, [&](std::size_t k) {
    const Vector pe = project_unit(system_, nn + k, 1);
    for (std::size_t j = 0; j < len; ++j) w(k, j) = (j == nn + k ? 1.0 : 0.0) - pe[j];
  });
  return w;
}

PbarBlocks UnderSolver::pbar_block_decomposition() const {
  if (system_.strategy() != AugmentStrategy::sign_alternating || q() != n())
    throw StrategyMismatch(
        "Pbar block decomposition needs a sign-alternating system with q = n (at least two "
        "blocks)");
  const std::size_t nn = n();
  const DenseMatrix p = projector_matrix();

  PbarBlocks out{DenseMatrix(nn, nn), DenseMatrix(nn, nn), DenseMatrix(nn, nn),
                 DenseMatrix(nn, nn), 0.0};
  for (std::size_t j = 0; j < nn; ++j)
    for (std::size_t i = 0; i < nn; ++i) {
      out.p11(i, j) = p(i, j);
      out.p12(i, j) = p(i, nn + j);
      out.p21(i, j) = p(nn + i, j);
      out.p22(i, j) = p(nn + i, nn + j);
    }

  DenseMatrix half_sum(nn, nn), half_alt(nn, nn);
  const auto projs = original_block_projectors(system_, opts_);
  for (std::size_t b = 0; b < projs.size(); ++b) {
    const double sign = b % 2 == 0 ? 1.0 : -1.0;
    for (std::size_t j = 0; j < nn; ++j)
      for (std::size_t i = 0; i < nn; ++i) {
        half_sum(i, j) += 0.5 * projs[b](i, j);
        half_alt(i, j) += 0.5 * sign * projs[b](i, j);
      }
  }
  for (std::size_t j = 0; j < nn; ++j)
    for (std::size_t i = 0; i < nn; ++i) {
      out.max_deviation = std::max({out.max_deviation, std::abs(out.p11(i, j) - half_sum(i, j)),
                                    std::abs(out.p22(i, j) - half_sum(i, j)),
                                    std::abs(out.p12(i, j) - half_alt(i, j)),
                                    std::abs(out.p21(i, j) - half_alt(i, j))});
    }
  if (opts_.enforce_certificates && out.max_deviation > kPbarTol) {
    std::ostringstream msg;
    msg << "Pbar block decomposition deviates from the projector sums by " << out.max_deviation;
    throw CertificateFailure(msg.str());
  }
  return out;
}

}  // namespace augblock
