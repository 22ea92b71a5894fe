#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>

#include "augblock/matrix.hpp"

namespace augblock {

/// Diagnostics of one pipeline run. Every field except `timings_ms` is a
/// deterministic function of the configuration and inputs.
struct SolveReport {
  std::string mode;
  std::string augment;
  std::string reorder;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t blocks = 0;
  std::size_t q = 0;
  unsigned threads = 1;

  double orthogonality_defect = 0.0;
  double residual_norm = 0.0;
  /// Underdetermined mode.
  std::optional<double> y_norm;
  /// Overdetermined mode.
  std::optional<double> gamma_y_plus_Sz_norm;
  std::optional<double> normal_residual;
  std::optional<double> oracle_gap;
  /// Set when RCM reordering ran.
  std::optional<std::size_t> bandwidth_before;
  std::optional<std::size_t> bandwidth_after;

  /// "ok" or the error category that stopped the run.
  std::string status = "ok";
  int exit_code = 0;
  std::string message;

  /// Solution in original column ordering; empty on failure.
  Vector x;
  /// Wall-clock milliseconds per stage.
  std::map<std::string, double> timings_ms;

  friend bool operator==(const SolveReport&, const SolveReport&) = default;
};

/// Pretty-printed JSON with sorted keys. Doubles use shortest round-trip
/// formatting, so parse_report(to_json(r)) == r for finite values.
std::string to_json(const SolveReport& report);
SolveReport parse_report(const std::string& json);

}  // namespace augblock
