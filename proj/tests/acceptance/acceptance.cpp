// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "augblock/errors.hpp"
#include "augblock/oracle.hpp"
#include "augblock/pipeline.hpp"
#include "test_support.hpp"

namespace {

using namespace augblock;
using testing::max_abs_diff;
using testing::sub;

constexpr int kInstances = 50;
constexpr std::size_t kShort = 40;
constexpr std::size_t kLong = 60;

constexpr double kOrthoTol = 1e-13;
constexpr double kUnderCertTol = 1e-10;
constexpr double kOracleTol = 1e-8;
constexpr double kCondLimit = 1e6;
constexpr double kIdentityTol = 1e-12;
constexpr double kConstraintTol = 1e-10;
constexpr double kFDetectTol = 1e-6;
constexpr double kResidualTol = 1e-10;
constexpr double kWorkedTol = 1e-14;
constexpr double kThreadTol = 1e-10;
constexpr unsigned kManyThreads = 8;
constexpr int kSampledF = 10;

struct Instance {
  SparseMatrix a;
  Vector b;
  std::size_t p;
};

Instance under_instance(int k) {
  const auto seed = static_cast<std::uint64_t>(k);
  return {testing::random_banded(kShort, kLong, 1 + seed % 3, 20000 + seed),
          testing::random_vector(kShort, 21000 + seed), 2 + seed % 3};
}

Instance over_instance(int k) {
  const auto seed = static_cast<std::uint64_t>(k);
  return {testing::random_banded(kLong, kShort, 1 + seed % 3, 22000 + seed),
          testing::random_vector(kLong, 23000 + seed), 2 + seed % 3};
}

bool consecutive_only(const SparseMatrix& a, const BlockPartition& part) {
  for (const auto& [i, j] : overlap_pairs(a, part))
    if (j != i + 1) return false;
  return true;
}

std::vector<AugmentStrategy> admissible(const SparseMatrix& a, const BlockPartition& part) {
  if (consecutive_only(a, part))
    return {AugmentStrategy::sign_alternating, AugmentStrategy::pairwise};
  return {AugmentStrategy::pairwise};
}

Options with_threads(unsigned threads) {
  Options o;
  o.threads = threads;
  return o;
}

UnderSolver make_under(const Instance& in, AugmentStrategy s, unsigned threads = 1) {
  const Options o = with_threads(threads);
  return UnderSolver(augment_rows(in.a, make_partition(Axis::rows, in.a.rows(), in.p), s, o), o);
}

OverSolver make_over(const Instance& in, AugmentStrategy s, unsigned threads = 1) {
  const Options o = with_threads(threads);
  return OverSolver(augment_cols(in.a, make_partition(Axis::cols, in.a.cols(), in.p), s, o), o);
}

// Tracks the worst value seen against a bound.
struct Worst {
  double value = 0.0;
  bool ok = true;
  void take(double v, double bound) {
    value = std::max(value, v);
    ok = ok && v <= bound && std::isfinite(v);
  }
};

struct Outcome {
  bool pass = true;
  std::string detail;
};

char buf[512];

template <class... Args>
std::string fmt(const char* f, Args... args) {
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1. Normalized off-diagonal block products after augmentation.
Outcome orthogonality() {
  Worst worst;
  int systems = 0;
  for (int k = 0; k < kInstances; ++k) {
    const Instance u = under_instance(k);
    const auto rpart = make_partition(Axis::rows, kShort, u.p);
    for (const auto s : admissible(u.a, rpart)) {
      worst.take(verify_orthogonality(augment_rows(u.a, rpart, s), kOrthoTol).max_offdiag,
                 kOrthoTol);
      ++systems;
    }
    const Instance o = over_instance(k);
    const auto cpart = make_partition(Axis::cols, kShort, o.p);
    for (const auto s : admissible(o.a, cpart)) {
      worst.take(verify_orthogonality(augment_cols(o.a, cpart, s), kOrthoTol).max_offdiag,
                 kOrthoTol);
      ++systems;
    }
  }
  return {worst.ok && systems == 4 * kInstances,
          fmt("%d systems, max normalized off-diagonal %.3e (bound %.0e)", systems, worst.value,
              kOrthoTol)};
}

// 2. Underdetermined certificates and oracle agreement.
Outcome under_correctness() {
  Worst res, y, gap;
  int solves = 0;
  for (int k = 0; k < kInstances; ++k) {
    const Instance in = under_instance(k);
    for (const auto s : admissible(in.a, make_partition(Axis::rows, kShort, in.p))) {
      const UnderSolver solver = make_under(in, s);
      const auto sol = solver.solve(in.b);
      res.take(sol.relative_residual, kUnderCertTol);
      y.take(sol.y_norm / std::max(1.0, norm2(sol.x)), kUnderCertTol);
      gap.take(under_oracle_gap(solver, in.b, sol), kOracleTol);
      ++solves;
    }
  }
  return {res.ok && y.ok && gap.ok,
          fmt("%d solves, max ||Ax-b||/||b|| %.3e, max ||y||/max(1,||x||) %.3e, max oracle gap "
              "%.3e",
              solves, res.value, y.value, gap.value)};
}

// 3. Overdetermined least squares against the dense oracle.
Outcome over_correctness() {
  Worst gap;
  int solves = 0;
  int skipped = 0;
  double min_residual = INFINITY;
  for (int k = 0; k < kInstances; ++k) {
    const Instance in = over_instance(k);
    if (oracle::condition_number(in.a.to_dense()) > kCondLimit) {
      ++skipped;
      continue;
    }
    for (const auto s : admissible(in.a, make_partition(Axis::cols, kShort, in.p))) {
      const auto sol = make_over(in, s).solve(in.b);
      gap.take(over_oracle_gap(in.a, in.b, sol.x_ls), kOracleTol);
      min_residual = std::min(min_residual, sol.residual_norm);
      ++solves;
    }
  }
  // Random right-hand sides in a 60-dim space are inconsistent.
  const bool inconsistent = min_residual > 1e-3;
  return {gap.ok && inconsistent && solves > 0,
          fmt("%d solves (%d ill-conditioned skipped), max relative gap %.3e, min residual %.3e",
              solves, skipped, gap.value, min_residual)};
}

// 4. Identity suite.
Outcome identities() {
  Worst a, b_under, b_over, c, d;
  for (int k = 0; k < kInstances; ++k) {
    const Instance u = under_instance(k);
    for (const auto s : admissible(u.a, make_partition(Axis::rows, kShort, u.p))) {
      const UnderSolver solver = make_under(u, s);
      const DenseMatrix& S = solver.schur().matrix();
      if (s == AugmentStrategy::sign_alternating) {
        a.take(max_abs_diff(S, sign_alternating_S(solver.system())), kIdentityTol);
        d.take(solver.pbar_block_decomposition().max_deviation, kIdentityTol);
      }
      const DenseMatrix w = solver.w_matrix();
      const DenseMatrix bm = sub(w, 0, solver.q(), 0, solver.n());
      const DenseMatrix lhs = testing::add(multiply(bm, bm.transposed()), multiply(S, S));
      b_under.take(subtract(lhs, S).frobenius_norm() / S.frobenius_norm(), kIdentityTol);
    }

    const Instance o = over_instance(k);
    const auto cpart = make_partition(Axis::cols, kShort, o.p);
    for (const auto s : admissible(o.a, cpart)) {
      const OverSolver solver = make_over(o, s);
      const DenseMatrix& S = solver.schur().matrix();
      const DenseMatrix w = solver.w_matrix();
      const DenseMatrix bm = sub(w, 0, solver.m(), 0, solver.q());
      b_over.take(subtract(multiply(bm.transposed(), bm), subtract(S, multiply(S, S)))
                          .frobenius_norm() /
                      S.frobenius_norm(),
                  kIdentityTol);
      const DenseMatrix abar = solver.system().augmented().to_dense();
      const DenseMatrix g = multiply(abar.transposed(), abar);
      double off = 0.0;
      for (std::size_t j = 0; j < g.cols(); ++j)
        for (std::size_t i = 0; i < g.rows(); ++i)
          if (cpart.block_of(i) != cpart.block_of(j)) off += g(i, j) * g(i, j);
      c.take(std::sqrt(off) / g.frobenius_norm(), kIdentityTol);
    }
  }
  return {a.ok && b_under.ok && b_over.ok && c.ok && d.ok,
          fmt("(a) S vs I-sum(P_i)/2 %.3e; (b) BB^T+S^2-S %.3e, B^TB-(S-S^2) %.3e; (c) Abar^TAbar "
              "off-blocks %.3e; (d) Pbar blocks %.3e",
              a.value, b_under.value, b_over.value, c.value, d.value)};
}

// 5. Gamma y + S z vanishes exactly for f = 0.
Outcome f_characterization() {
  Worst zero;
  double min_ratio = INFINITY;
  int sampled = 0;
  for (int k = 0; k < kInstances; ++k) {
    const Instance in = over_instance(k);
    for (const auto s : admissible(in.a, make_partition(Axis::cols, kShort, in.p))) {
      const OverSolver solver = make_over(in, s);
      const auto sol = solver.solve(in.b);
      zero.take(sol.gamma_y_plus_sz_norm / std::max(1.0, norm2(sol.y)), kConstraintTol);
      if (k >= kSampledF) continue;
      const Vector f =
          testing::random_vector(solver.q(), 24000 + static_cast<std::uint64_t>(k));
      const auto [y, z] = solver.general_f_solve(in.b, f);
      const Vector g = add(matvec(solver.system().gamma(), y), matvec(solver.schur().matrix(), z));
      min_ratio = std::min(min_ratio, norm2(g) / norm2(f));
      ++sampled;
    }
  }
  return {zero.ok && min_ratio >= kFDetectTol && sampled >= kSampledF,
          fmt("f = 0: max ||Gy+Sz||/max(1,||y||) %.3e; %d sampled f != 0: min ||Gy+Sz||/||f|| "
              "%.3e (bound %.0e)",
              zero.value, sampled, min_ratio, kFDetectTol)};
}

// 6. phi(y, z) equals the least-squares residual and bounds the minimum.
Outcome residual_identity() {
  Worst gap;
  double min_slack = INFINITY;
  bool ok = true;
  for (int k = 0; k < kInstances; ++k) {
    const Instance in = over_instance(k);
    const double min_sq = oracle::minnorm_ls_solve(in.a.to_dense(), in.b).residual_squared;
    for (const auto s : admissible(in.a, make_partition(Axis::cols, kShort, in.p))) {
      const OverSolver solver = make_over(in, s);
      const auto rep = solver.residual_identity_check(solver.solve(in.b), in.b, min_sq, kResidualTol);
      gap.take(rep.identity_gap, kResidualTol);
      const double b2 = dot(in.b, in.b);
      min_slack = std::min(min_slack, *rep.lower_bound_slack / b2);
      ok = ok && rep.passed;
    }
  }
  return {ok && gap.ok && min_slack >= -kResidualTol,
          fmt("max |phi - ||Ax-b||^2|/max(1,||b||^2) %.3e; min (phi - min residual^2)/||b||^2 "
              "%.3e",
              gap.value, min_slack)};
}

// 7. Rank-deficient input yields exit code 3.
Outcome rank_failure() {
  int cases = 0;
  int detected = 0;
  std::string seen;
  auto check = [&](const SparseMatrix& a, const Vector& b, SolveMode mode, std::size_t p,
                   AugmentStrategy s) {
    SolveConfig c;
    c.mode = mode;
    c.blocks = p;
    c.augment = s;
    const auto r = solve_system(a, b, c);
    ++cases;
    if (r.exit_code == exit_code::rank && r.x.empty()) ++detected;
    if (seen.find(r.status) == std::string::npos) seen += (seen.empty() ? "" : ",") + r.status;
  };
  for (int k = 0; k < 5; ++k) {
    const Instance u = under_instance(k);
    const DenseMatrix d = u.a.to_dense();
    // Duplicate across blocks and within one block.
    for (const auto& [src, dst] : {std::pair<std::size_t, std::size_t>{2, 35}, {2, 5}}) {
      DenseMatrix dup = d;
      for (std::size_t j = 0; j < dup.cols(); ++j) dup(dst, j) = dup(src, j);
      const SparseMatrix a = SparseMatrix::from_dense(dup);
      for (const auto s : {AugmentStrategy::sign_alternating, AugmentStrategy::pairwise})
        check(a, u.b, SolveMode::under, 2, s);
      check(a, u.b, SolveMode::under, 3, AugmentStrategy::pairwise);
      const SparseMatrix at = a.transposed();
      const Vector bt = testing::random_vector(at.rows(), 25000 + static_cast<std::uint64_t>(k));
      for (const auto s : {AugmentStrategy::sign_alternating, AugmentStrategy::pairwise})
        check(at, bt, SolveMode::over, 2, s);
      check(at, bt, SolveMode::over, 3, AugmentStrategy::pairwise);
    }
  }
  return {detected == cases,
          fmt("%d/%d duplicated row/column inputs exited with code 3 (statuses: %s)", detected,
              cases, seen.c_str())};
}

// 8. Worked 2x2 examples.
Outcome worked_examples() {
  const UnderSolver under(augment_rows(SparseMatrix::identity(2), make_partition(Axis::rows, 2, 2),
                                       AugmentStrategy::sign_alternating));
  const Vector bu{2, 2};
  const auto us = under.solve(bu);
  const double e_under = std::max(
      {max_abs_diff(us.x, Vector{2, 2}), max_abs_diff(us.y, Vector{0, 0}),
       max_abs_diff(under.schur().matrix(), DenseMatrix::from_rows({{0.5, 0}, {0, 0.5}})),
       max_abs_diff(under.rhs_f(bu), Vector{-1, 1}), under_oracle_gap(under, bu, us)});

  const OverSolver over(augment_cols(SparseMatrix::identity(2), make_partition(Axis::cols, 2, 2),
                                     AugmentStrategy::sign_alternating));
  const Vector bo{3, 5};
  const auto os = over.solve(bo);
  const double e_over = std::max(
      {max_abs_diff(os.y, Vector{1.5, 2.5}), max_abs_diff(os.z, Vector{-3, 5}),
       max_abs_diff(os.x_ls, Vector{3, 5}),
       max_abs_diff(oracle::minnorm_ls_solve(DenseMatrix::identity(2), bo).x, os.x_ls)});
  return {e_under <= kWorkedTol && e_over <= kWorkedTol,
          fmt("under max error %.3e, over max error %.3e (bound %.0e)", e_under, e_over,
              kWorkedTol)};
}

// 9. One worker versus many.
Outcome concurrency() {
  Worst diff;
  for (int k = 0; k < kInstances; k += 5) {
    const Instance u = under_instance(k);
    for (const auto s : admissible(u.a, make_partition(Axis::rows, kShort, u.p)))
      diff.take(testing::rel_diff(make_under(u, s, kManyThreads).solve(u.b).x,
                                  make_under(u, s, 1).solve(u.b).x),
                kThreadTol);
    const Instance o = over_instance(k);
    for (const auto s : admissible(o.a, make_partition(Axis::cols, kShort, o.p)))
      diff.take(testing::rel_diff(make_over(o, s, kManyThreads).solve(o.b).x_ls,
                                  make_over(o, s, 1).solve(o.b).x_ls),
                kThreadTol);
  }
  return {diff.ok, fmt("%u vs 1 workers, max relative difference %.3e (bound %.0e)", kManyThreads,
                       diff.value, kThreadTol)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"orthogonality construction", orthogonality},
      {"underdetermined correctness", under_correctness},
      {"overdetermined correctness", over_correctness},
      {"identity suite", identities},
      {"f = 0 characterization", f_characterization},
      {"residual identity", residual_identity},
      {"rank-failure detection", rank_failure},
      {"worked micro-examples", worked_examples},
      {"concurrency contract", concurrency},
  };
  int failed = 0;
  int index = 0;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& [name, body] : criteria) {
    ++index;
    Outcome out;
    try {
      out = body();
    } catch (const std::exception& e) {
      out = {false, std::string("unexpected exception: ") + e.what()};
    }
    failed += out.pass ? 0 : 1;
    std::printf("%s criterion %d %s: %s\n", out.pass ? "PASS" : "FAIL", index, name,
                out.detail.c_str());
    std::fflush(stdout);
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  std::printf("%d/%zu criteria passed in %.1f s\n", index - failed, criteria.size(),
              elapsed.count());
  return failed == 0 ? 0 : 1;
}
