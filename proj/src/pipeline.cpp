#include "augblock/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>

#include "augblock/errors.hpp"
#include "augblock/io.hpp"
#include "augblock/oracle.hpp"
#include "augblock/partition.hpp"

namespace augblock {

namespace {

class StageClock {
 public:
  explicit StageClock(SolveReport& report) : report_(report) {}

  template <class F>
  decltype(auto) time(const char* stage, F&& body) {
    const auto start = std::chrono::steady_clock::now();
    struct Record {
      SolveReport& r;
      const char* stage;
      std::chrono::steady_clock::time_point start;
      ~Record() {
        const std::chrono::duration<double, std::milli> d = std::chrono::steady_clock::now() - start;
        r.timings_ms[stage] += d.count();
      }
    } record{report_, stage, start};
    return body();
  }

 private:
  SolveReport& report_;
};

void fail(SolveReport& r, const char* status, int code, const std::string& message) {
  r.status = status;
  r.exit_code = code;
  r.message = message;
  r.x.clear();
}

// Runs body and maps library errors onto the report.
template <class F>
void guarded(SolveReport& r, F&& body) {
  try {
    body();
  } catch (const IoError& e) {
    fail(r, "io_error", exit_code::io, e.what());
  } catch (const ParseError& e) {
    fail(r, "parse_error", exit_code::io, e.what());
  } catch (const UnsupportedFormat& e) {
    fail(r, "unsupported_format", exit_code::io, e.what());
  } catch (const RankDeficient& e) {
    fail(r, "rank_deficient", exit_code::rank, e.what());
  } catch (const NotPositiveDefinite& e) {
    fail(r, "not_positive_definite", exit_code::rank, e.what());
  } catch (const CertificateFailure& e) {
    fail(r, "certificate_failure", exit_code::certificate, e.what());
  } catch (const ModeMismatch& e) {
    fail(r, "mode_mismatch", exit_code::certificate, e.what());
  } catch (const StructureViolation& e) {
    fail(r, "structure_violation", exit_code::certificate, e.what());
  } catch (const Error& e) {
    fail(r, "invalid_input", exit_code::certificate, e.what());
  }
}

Vector oracle_under_solution(const UnderSolver& solver, std::span<const double> b) {
  const AugmentedSystem& sys = solver.system();
  const std::size_t n = sys.n();
  const std::size_t q = sys.q();
  const std::size_t nbar = sys.augmented_extent();
  const std::size_t m = sys.m();
  const DenseMatrix abar = sys.augmented().to_dense();
  const Vector b_perm = sys.partition().row_perm().apply(b);

  const DenseMatrix pinv = oracle::dense_pinv(abar);
  const DenseMatrix proj = multiply(pinv, abar);
  const Vector u = matvec(pinv, b_perm);

  DenseMatrix big(m + q, nbar);
  Vector rhs(m + q);
  for (std::size_t j = 0; j < nbar; ++j)
    for (std::size_t i = 0; i < m; ++i) big(i, j) = abar(i, j);
  for (std::size_t k = 0; k < q; ++k) {
    for (std::size_t j = 0; j < nbar; ++j) big(m + k, j) = (j == n + k ? 1.0 : 0.0) - proj(n + k, j);
    rhs[m + k] = -u[n + k];
  }
  std::copy(b_perm.begin(), b_perm.end(), rhs.begin());
  return oracle::minnorm_ls_solve(big, rhs).x;
}

double relative_distance(std::span<const double> x, std::span<const double> ref) {
  const double d = norm2(subtract(x, ref));
  const double r = norm2(ref);
  return r > 0.0 ? d / r : d;
}

}  // namespace

std::string_view to_string(SolveMode mode) { return mode == SolveMode::under ? "under" : "over"; }

std::string_view to_string(AugmentStrategy strategy) {
  return strategy == AugmentStrategy::pairwise ? "pairwise" : "sign-alternating";
}

std::string_view to_string(Reorder reorder) { return reorder == Reorder::rcm ? "rcm" : "none"; }

double under_oracle_gap(const UnderSolver& solver, std::span<const double> b,
                        const UnderSolution& sol) {
  return relative_distance(stack(sol.x_reordered, sol.y), oracle_under_solution(solver, b));
}

double over_oracle_gap(const SparseMatrix& a, std::span<const double> b,
                       std::span<const double> x) {
  return relative_distance(x, oracle::minnorm_ls_solve(a.to_dense(), b).x);
}

SolveReport solve_system(const SparseMatrix& a, std::span<const double> b,
                         const SolveConfig& config) {
  SolveReport r;
  r.mode = to_string(config.mode);
  r.augment = to_string(config.augment);
  r.reorder = to_string(config.reorder);
  r.m = a.rows();
  r.n = a.cols();
  r.blocks = config.blocks;
  r.threads = config.threads;

  StageClock clock(r);
  guarded(r, [&] {
    const bool under = config.mode == SolveMode::under;
    if (under && a.rows() > a.cols())
      throw ModeMismatch("mode under needs rows <= cols, got " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
    if (!under && a.rows() < a.cols())
      throw ModeMismatch("mode over needs rows >= cols, got " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
    if (b.size() != a.rows())
      throw DimensionMismatch("rhs has " + std::to_string(b.size()) + " entries, matrix has " +
                              std::to_string(a.rows()) + " rows");

    const Options opts{config.tol, config.threads, true};
    const Axis axis = under ? Axis::rows : Axis::cols;

    RcmOrdering ordering;
    if (config.reorder == Reorder::rcm) {
      clock.time("reorder", [&] {
        ordering = rcm_permutation(a);
        r.bandwidth_before = bandwidth(a);
        r.bandwidth_after = bandwidth(a.permuted(ordering.rows.order(), ordering.cols.order()));
      });
    }

    const BlockPartition part = clock.time("partition", [&] {
      return make_partition(axis, under ? a.rows() : a.cols(), config.blocks)
          .with_permutations(ordering.rows, ordering.cols);
    });

    AugmentedSystem system = clock.time("augment", [&] {
      return under ? augment_rows(a, part, config.augment, opts)
                   : augment_cols(a, part, config.augment, opts);
    });
    r.q = system.q();
    r.orthogonality_defect = verify_orthogonality(system, config.tol.ortho).max_offdiag;

    if (under) {
      const UnderSolver solver = clock.time("factor", [&] { return UnderSolver(std::move(system), opts); });
      const UnderSolution sol = clock.time("solve", [&] { return solver.solve(b); });
      r.residual_norm = sol.residual_norm;
      r.y_norm = sol.y_norm;
      r.x = sol.x;
      if (config.compare_oracle)
        r.oracle_gap = clock.time("oracle", [&] { return under_oracle_gap(solver, b, sol); });
    } else {
      const OverSolver solver = clock.time("factor", [&] { return OverSolver(std::move(system), opts); });
      const OverSolution sol = clock.time("solve", [&] { return solver.solve(b); });
      r.residual_norm = sol.residual_norm;
      r.gamma_y_plus_Sz_norm = sol.gamma_y_plus_sz_norm;
      r.normal_residual = sol.normal_residual;
      r.x = sol.x_ls;
      if (config.compare_oracle)
        r.oracle_gap = clock.time("oracle", [&] { return over_oracle_gap(a, b, sol.x_ls); });
    }
  });
  return r;
}

SolveReport run(const SolveConfig& config) {
  SolveReport r;
  std::optional<SparseMatrix> a;
  Vector b;
  StageClock clock(r);
  guarded(r, [&] {
    clock.time("read", [&] {
      a = read_matrix_market(config.matrix);
      if (config.rhs.empty()) throw IoError("no right-hand side file given");
      b = read_vector(config.rhs);
    });
  });
  if (a && r.exit_code == exit_code::ok) {
    const auto read_ms = r.timings_ms;
    r = solve_system(*a, b, config);
    r.timings_ms.insert(read_ms.begin(), read_ms.end());
  } else {
    r.mode = to_string(config.mode);
    r.augment = to_string(config.augment);
    r.reorder = to_string(config.reorder);
    r.blocks = config.blocks;
    r.threads = config.threads;
  }

  guarded(r, [&] {
    if (!config.solution.empty() && r.exit_code == exit_code::ok) write_vector(config.solution, r.x);
    if (!config.output.empty()) {
      std::ofstream out(config.output);
      if (!out) throw IoError("cannot write " + config.output.string());
      out << to_json(r);
    }
  });
  return r;
}

}  // namespace augblock
