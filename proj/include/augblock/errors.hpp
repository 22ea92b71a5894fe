#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace augblock {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand sizes do not match. Always a caller bug.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A block (or the whole matrix) is numerically rank deficient.
class RankDeficient : public Error {
 public:
  static constexpr std::size_t kUnknownBlock = std::numeric_limits<std::size_t>::max();

  RankDeficient(std::size_t block, double ratio, const std::string& what)
      : Error(what), block_(block), ratio_(ratio) {}

  /// Index of the failing block, or kUnknownBlock.
  std::size_t block() const noexcept { return block_; }
  /// Smallest |R_kk| divided by the largest one.
  double ratio() const noexcept { return ratio_; }

 private:
  std::size_t block_;
  double ratio_;
};

/// A Cholesky pivot fell below tolerance.
class NotPositiveDefinite : public Error {
 public:
  NotPositiveDefinite(std::size_t pivot_index, double pivot, const std::string& what)
      : Error(what), pivot_index_(pivot_index), pivot_(pivot) {}

  std::size_t pivot_index() const noexcept { return pivot_index_; }
  double pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_index_;
  double pivot_;
};

/// The block overlap pattern does not admit the requested augmentation.
class StructureViolation : public Error {
 public:
  using Error::Error;
};

/// An operation that only makes sense for one augmentation strategy.
class StrategyMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidBoundaries : public Error {
 public:
  using Error::Error;
};

/// A computed result failed its a-posteriori check.
class CertificateFailure : public Error {
 public:
  using Error::Error;
};

/// Input shape is incompatible with the requested solve mode.
class ModeMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class UnsupportedFormat : public Error {
 public:
  using Error::Error;
};

/// A file could not be opened or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace augblock
