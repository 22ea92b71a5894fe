#include <gtest/gtest.h>

#include "augblock/errors.hpp"
#include "augblock/oracle.hpp"
#include "augblock/pipeline.hpp"
#include "augblock/solver_over.hpp"
#include "test_support.hpp"

namespace augblock {
namespace {

using testing::max_abs_diff;
using testing::sub;

const SparseMatrix kOnes = SparseMatrix::from_dense(DenseMatrix::from_rows({{1}, {1}}));

OverSolver worked_solver() {
  return OverSolver(augment_cols(SparseMatrix::identity(2), make_partition(Axis::cols, 2, 2),
                                 AugmentStrategy::sign_alternating));
}

OverSolver ones_solver() {
  return OverSolver(
      augment_cols(kOnes, make_partition(Axis::cols, 1, 1), AugmentStrategy::sign_alternating));
}

Vector gamma_y_plus_sz(const OverSolver& s, const Vector& y, const Vector& z) {
  return add(matvec(s.system().gamma(), y), matvec(s.schur().matrix(), z));
}

TEST(AssembleSOver, WorkedSystemIsHalfIdentity) {
  EXPECT_LE(max_abs_diff(worked_solver().schur().matrix(),
                         DenseMatrix::from_rows({{0.5, 0}, {0, 0.5}})),
            1e-15);
}

TEST(AssembleSOver, EmptyWhenNoAugmentation) { EXPECT_TRUE(ones_solver().schur().empty()); }

TEST(AssembleSOver, MatchesOracle) {
  const SparseMatrix a = SparseMatrix::from_dense(testing::random_dense(10, 6, 71));
  const OverSolver s(augment_cols(a, make_partition(Axis::cols, 6, 2), AugmentStrategy::pairwise));
  const DenseMatrix abar = s.system().augmented().to_dense();
  const DenseMatrix p = multiply(abar, oracle::dense_pinv(abar));
  const std::size_t mbar = s.system().augmented_extent();
  const DenseMatrix ref =
      subtract(DenseMatrix::identity(s.q()), sub(p, s.m(), mbar, s.m(), mbar));
  EXPECT_LE(max_abs_diff(s.schur().matrix(), ref), 1e-12);
}

TEST(BlockwiseNormalSolve, WorkedSystem) {
  EXPECT_LE(max_abs_diff(worked_solver().blockwise_normal_solve(Vector{3, 5}), Vector{1.5, 2.5}),
            1e-15);
  EXPECT_EQ(worked_solver().blockwise_normal_solve(Vector{0, 0}), (Vector{0, 0}));
}

TEST(BlockwiseNormalSolve, SingleColumnIsMean) {
  EXPECT_LE(max_abs_diff(ones_solver().blockwise_normal_solve(Vector{1, 3}), Vector{2}), 1e-15);
}

TEST(SolveOver, WorkedSystem) {
  const auto sol = worked_solver().solve(Vector{3, 5});
  EXPECT_LE(max_abs_diff(sol.y, Vector{1.5, 2.5}), 1e-14);
  EXPECT_LE(max_abs_diff(sol.z, Vector{-3, 5}), 1e-14);
  EXPECT_LE(max_abs_diff(sol.x_ls, Vector{3, 5}), 1e-14);
  EXPECT_LE(sol.residual_norm, 1e-14);
}

TEST(SolveOver, SingleColumn) {
  const auto sol = ones_solver().solve(Vector{1, 3});
  EXPECT_LE(max_abs_diff(sol.x_ls, Vector{2}), 1e-15);
  EXPECT_TRUE(sol.z.empty());
  EXPECT_NEAR(sol.residual_norm * sol.residual_norm, 2.0, 1e-14);
}

TEST(SolveOver, InconsistentRandomMatchesOracle) {
  const SparseMatrix a = SparseMatrix::from_dense(testing::random_dense(12, 6, 81));
  const Vector b = testing::random_vector(12, 82);
  const OverSolver s(augment_cols(a, make_partition(Axis::cols, 6, 2), AugmentStrategy::pairwise));
  const auto sol = s.solve(b);
  EXPECT_GT(sol.residual_norm, 1e-3);
  EXPECT_LE(over_oracle_gap(a, b, sol.x_ls), 1e-8);
}

TEST(SolveOver, DuplicatedColumnIsDetected) {
  const DenseMatrix d = DenseMatrix::from_rows(
      {{1, 0, 1, 0}, {2, 1, 2, 0}, {0, 3, 0, 1}, {0, 0, 0, 4}, {1, 0, 1, 0}, {0, 2, 0, 1}});
  const SparseMatrix a = SparseMatrix::from_dense(d);
  for (const auto strat : {AugmentStrategy::sign_alternating, AugmentStrategy::pairwise}) {
    bool detected = false;
    try {
      OverSolver(augment_cols(a, make_partition(Axis::cols, 4, 2), strat));
    } catch (const NotPositiveDefinite&) {
      detected = true;
    } catch (const RankDeficient&) {
      detected = true;
    } catch (const StructureViolation&) {
      detected = strat == AugmentStrategy::sign_alternating;
    }
    EXPECT_TRUE(detected);
  }
}

TEST(ResidualIdentity, ConsistentSystem) {
  const auto s = worked_solver();
  const Vector b{3, 5};
  const auto rep = s.residual_identity_check(s.solve(b), b);
  EXPECT_LE(std::abs(rep.phi), 1e-26);
  EXPECT_LE(rep.residual_squared, 1e-26);
  EXPECT_TRUE(rep.passed);
}

TEST(ResidualIdentity, SingleColumn) {
  const auto s = ones_solver();
  const Vector b{1, 3};
  const auto rep = s.residual_identity_check(s.solve(b), b, 2.0);
  EXPECT_NEAR(rep.phi, 2.0, 1e-14);
  EXPECT_TRUE(rep.passed);
}

TEST(GeneralFSolve, ZeroFMatchesSolve) {
  const auto s = worked_solver();
  const auto [y, z] = s.general_f_solve(Vector{3, 5}, Vector{0, 0});
  EXPECT_LE(max_abs_diff(y, Vector{1.5, 2.5}), 1e-14);
  EXPECT_LE(max_abs_diff(z, Vector{-3, 5}), 1e-14);
}

TEST(GeneralFSolve, ZeroData) {
  const auto [y, z] = worked_solver().general_f_solve(Vector{0, 0}, Vector{0, 0});
  EXPECT_EQ(y, (Vector{0, 0}));
  EXPECT_EQ(z, (Vector{0, 0}));
}

TEST(GeneralFSolve, NonzeroFBreaksConstraint) {
  const auto s = worked_solver();
  const auto [y, z] = s.general_f_solve(Vector{0, 0}, Vector{1, 0});
  EXPECT_GT(norm2(gamma_y_plus_sz(s, y, z)), 0.1);
}

TEST(GeneralFSolve, IsMinimalNormAugmentedSolution) {
  // [A B; Gamma S] [y; z] ~ [b; f] solved densely.
  const SparseMatrix a = testing::random_banded(14, 8, 1, 90);
  const OverSolver s(augment_cols(a, make_partition(Axis::cols, 8, 2), AugmentStrategy::pairwise));
  const Vector b = testing::random_vector(14, 91);
  const Vector f = testing::random_vector(s.q(), 92);
  const auto [y, z] = s.general_f_solve(b, f);
  const DenseMatrix abar = s.system().augmented().to_dense();
  const DenseMatrix w = s.w_matrix();
  DenseMatrix big(abar.rows(), abar.cols() + w.cols());
  for (std::size_t i = 0; i < big.rows(); ++i) {
    for (std::size_t j = 0; j < abar.cols(); ++j) big(i, j) = abar(i, j);
    for (std::size_t j = 0; j < w.cols(); ++j) big(i, abar.cols() + j) = w(i, j);
  }
  const Vector ref = oracle::minnorm_ls_solve(big, stack(b, f)).x;
  EXPECT_LE(testing::rel_diff(stack(y, z), ref), 1e-10);
}

struct OverCase {
  SparseMatrix a;
  std::size_t p;
  AugmentStrategy strategy;
  Vector b;
};

class OverProperty : public ::testing::TestWithParam<int> {
 protected:
  OverCase make_case() const {
    const auto k = static_cast<std::uint64_t>(GetParam());
    const std::size_t n = 12 + k % 20;
    const std::size_t m = n + 3 + (k * 5) % 17;
    const auto strat = k % 2 == 0 ? AugmentStrategy::sign_alternating : AugmentStrategy::pairwise;
    return {testing::random_banded(m, n, 1, 8000 + k), 2 + k % 3, strat,
            testing::random_vector(m, 9000 + k)};
  }
  OverSolver solver(const OverCase& c, unsigned threads = 1) const {
    Options opts;
    opts.threads = threads;
    return OverSolver(
        augment_cols(c.a, make_partition(Axis::cols, c.a.cols(), c.p), c.strategy, opts), opts);
  }
};

TEST_P(OverProperty, OracleAgreement) {
  const auto c = make_case();
  const auto s = solver(c);
  const auto sol = s.solve(c.b);
  EXPECT_LE(over_oracle_gap(c.a, c.b, sol.x_ls), 1e-8);
  EXPECT_LE(sol.gamma_y_plus_sz_norm, 1e-10 * std::max(1.0, norm2(sol.y)));
}

TEST_P(OverProperty, WOrthogonalToRange) {
  const auto c = make_case();
  const auto s = solver(c);
  const DenseMatrix abar = s.system().augmented().to_dense();
  const DenseMatrix w = s.w_matrix();
  EXPECT_LE(multiply(abar.transposed(), w).frobenius_norm(),
            1e-12 * abar.frobenius_norm() * w.frobenius_norm());
}

TEST_P(OverProperty, SchurIdentities) {
  const auto c = make_case();
  const auto s = solver(c);
  const DenseMatrix w = s.w_matrix();
  const DenseMatrix& S = s.schur().matrix();
  const DenseMatrix b = sub(w, 0, s.m(), 0, s.q());
  EXPECT_LE(max_abs_diff(sub(w, s.m(), s.m() + s.q(), 0, s.q()), S), 1e-12);
  EXPECT_LE(subtract(S, multiply(w.transposed(), w)).frobenius_norm(), 1e-12 * S.frobenius_norm());
  EXPECT_LE(subtract(multiply(b.transposed(), b), subtract(S, multiply(S, S))).frobenius_norm(),
            1e-12 * S.frobenius_norm());
}

TEST_P(OverProperty, NonzeroFIsDetected) {
  const auto c = make_case();
  const auto s = solver(c);
  for (std::uint64_t t = 0; t < 3; ++t) {
    const Vector f = testing::random_vector(s.q(), 100 * t + static_cast<std::uint64_t>(GetParam()));
    const auto [y, z] = s.general_f_solve(c.b, f);
    EXPECT_GE(norm2(gamma_y_plus_sz(s, y, z)), 1e-6 * norm2(f));
  }
}

TEST_P(OverProperty, ResidualIdentity) {
  const auto c = make_case();
  const auto s = solver(c);
  const auto sol = s.solve(c.b);
  const double min_sq = oracle::minnorm_ls_solve(c.a.to_dense(), c.b).residual_squared;
  const auto rep = s.residual_identity_check(sol, c.b, min_sq);
  EXPECT_LE(rep.identity_gap, 1e-10);
  EXPECT_TRUE(rep.passed);
}

TEST_P(OverProperty, PermutationConsistency) {
  const auto c = make_case();
  const auto k = static_cast<std::uint64_t>(GetParam());
  const Permutation rp = testing::random_permutation(c.a.rows(), 10000 + k);
  const Permutation cp = testing::random_permutation(c.a.cols(), 11000 + k);
  const SparseMatrix shuffled = c.a.permuted(rp.inverse().order(), cp.inverse().order());
  const Vector b_shuffled = rp.apply_inverse(c.b);
  const auto part = make_partition(Axis::cols, c.a.cols(), c.p).with_permutations(rp, cp);
  const auto sol = OverSolver(augment_cols(shuffled, part, c.strategy)).solve(b_shuffled);
  EXPECT_LE(over_oracle_gap(shuffled, b_shuffled, sol.x_ls), 1e-8);
}

TEST_P(OverProperty, ThreadCountAgreement) {
  const auto c = make_case();
  const auto one = solver(c, 1).solve(c.b);
  const auto many = solver(c, 4).solve(c.b);
  EXPECT_LE(testing::rel_diff(many.x_ls, one.x_ls), 1e-10);
}

INSTANTIATE_TEST_SUITE_P(RandomBanded, OverProperty, ::testing::Range(0, 16));

}  // namespace
}  // namespace augblock
