#pragma once

#include <optional>
#include <span>
#include <utility>

#include "augblock/errors.hpp"
#include "augblock/factorization.hpp"
#include "augblock/matrix.hpp"

namespace augblock {

/// The q x q matrix S with its Cholesky factor. Empty when q = 0.
class SchurS {
 public:
  SchurS() = default;
  SchurS(DenseMatrix s, double pivot_tol) : s_(std::move(s)) {
    if (!s_.empty()) chol_.emplace(s_, pivot_tol);
  }

  std::size_t size() const noexcept { return s_.rows(); }
  bool empty() const noexcept { return s_.rows() == 0; }
  const DenseMatrix& matrix() const noexcept { return s_; }
  const DenseMatrix* cholesky_lower() const { return chol_ ? &chol_->lower() : nullptr; }

  /// S^{-1} v.
  Vector solve(std::span<const double> v) const {
    if (!chol_) {
      if (!v.empty()) throw DimensionMismatch("SchurS::solve: S is empty");
      return {};
    }
    return chol_->solve(v);
  }

 private:
  DenseMatrix s_;
  std::optional<Cholesky> chol_;
};

}  // namespace augblock
