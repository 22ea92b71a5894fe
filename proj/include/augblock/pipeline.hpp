#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string_view>

#include "augblock/augment.hpp"
#include "augblock/options.hpp"
#include "augblock/report.hpp"
#include "augblock/solver_over.hpp"
#include "augblock/solver_under.hpp"

namespace augblock {

enum class SolveMode { under, over };
enum class Reorder { none, rcm };

struct SolveConfig {
  SolveMode mode = SolveMode::under;
  std::size_t blocks = 2;
  AugmentStrategy augment = AugmentStrategy::sign_alternating;
  Reorder reorder = Reorder::none;
  Tolerances tol;
  bool compare_oracle = false;
  unsigned threads = 1;

  std::filesystem::path matrix;
  std::filesystem::path rhs;
  /// Report destination; empty means no file.
  std::filesystem::path output;
  /// Solution vector destination; empty means no file.
  std::filesystem::path solution;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int io = 1;
inline constexpr int certificate = 2;
inline constexpr int rank = 3;
}  // namespace exit_code

std::string_view to_string(SolveMode mode);
std::string_view to_string(AugmentStrategy strategy);
std::string_view to_string(Reorder reorder);

/// Pipeline on in-memory inputs: shape gate, optional RCM, partition, augment,
/// solve, back-permute. Never throws for library errors; they are mapped to
/// report.status and report.exit_code.
SolveReport solve_system(const SparseMatrix& a, std::span<const double> b,
                         const SolveConfig& config);

/// Reads config.matrix and config.rhs, runs solve_system, and writes the
/// report and solution files that are configured.
SolveReport run(const SolveConfig& config);

/// ||[x; y] - z|| / ||z|| with z the oracle minimal-norm solution of
/// [A Gamma; W] [x; y] = [b; f]. W and f are rebuilt from the oracle
/// pseudoinverse of [A Gamma]; b is in original row ordering.
double under_oracle_gap(const UnderSolver& solver, std::span<const double> b,
                        const UnderSolution& sol);

/// ||x_LS - x_oracle|| / ||x_oracle|| against the dense least-squares solution.
double over_oracle_gap(const SparseMatrix& a, std::span<const double> b, std::span<const double> x);

}  // namespace augblock
