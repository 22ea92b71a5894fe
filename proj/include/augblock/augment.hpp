#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "augblock/factorization.hpp"
#include "augblock/matrix.hpp"
#include "augblock/options.hpp"
#include "augblock/partition.hpp"

namespace augblock {

enum class AugmentStrategy {
  /// Gamma = D A with alternating +-I block signs. Only valid when just
  /// consecutive blocks overlap.
  sign_alternating,
  /// One group of appended columns (rows) per overlapping block pair. Works
  /// for any overlap pattern.
  pairwise,
};

/// A reordered matrix A together with its augmentation Gamma.
///
/// Row orientation: Abar = [A Gamma], Gamma is m x q, and the row blocks
/// Abar_i are mutually orthogonal. Column orientation: Abar = [A; Gamma],
/// Gamma is q x n, and the column blocks Abar^i are mutually orthogonal.
/// Every augmented block is factorized at construction.
class AugmentedSystem {
 public:
  Orientation orientation() const noexcept { return orientation_; }
  AugmentStrategy strategy() const noexcept { return strategy_; }
  const BlockPartition& partition() const noexcept { return partition_; }

  /// The reordered matrix P A Q.
  const SparseMatrix& original() const noexcept { return original_; }
  const SparseMatrix& gamma() const noexcept { return gamma_; }
  std::size_t q() const noexcept { return q_; }
  std::size_t m() const noexcept { return original_.rows(); }
  std::size_t n() const noexcept { return original_.cols(); }
  /// nbar = n + q (row orientation) or mbar = m + q (column orientation).
  std::size_t augmented_extent() const noexcept {
    return orientation_ == Orientation::row ? n() + q_ : m() + q_;
  }

  std::size_t block_count() const noexcept { return factorizations_.size(); }
  /// Abar_i (row) or Abar^i (column) as a dense matrix.
  const DenseMatrix& block(std::size_t i) const { return factorizations_[i].block(); }
  const BlockFactorization& factorization(std::size_t i) const { return factorizations_[i]; }

  /// Abar assembled as a sparse matrix.
  SparseMatrix augmented() const;

  /// Worker count used when factorizing; solvers reuse it.
  unsigned threads() const noexcept { return threads_; }

 private:
  friend AugmentedSystem augment_rows(const SparseMatrix&, const BlockPartition&, AugmentStrategy,
                                      const Options&);
  friend AugmentedSystem augment_cols(const SparseMatrix&, const BlockPartition&, AugmentStrategy,
                                      const Options&);

  AugmentedSystem() = default;
  void factorize(const Options& opts);

  Orientation orientation_ = Orientation::row;
  AugmentStrategy strategy_ = AugmentStrategy::sign_alternating;
  BlockPartition partition_{Axis::rows, {1}};
  SparseMatrix original_;
  SparseMatrix gamma_;
  std::size_t q_ = 0;
  std::vector<BlockFactorization> factorizations_;
  unsigned threads_ = 1;
};

/// Appends columns so that the row blocks of [A Gamma] become mutually
/// orthogonal. `a` is in original ordering; the partition's permutations are
/// applied first. A single block gives q = 0.
AugmentedSystem augment_rows(const SparseMatrix& a, const BlockPartition& part,
                             AugmentStrategy strategy, const Options& opts = {});

/// Column analogue of augment_rows: appends rows so that the column blocks of
/// [A; Gamma] become mutually orthogonal.
AugmentedSystem augment_cols(const SparseMatrix& a, const BlockPartition& part,
                             AugmentStrategy strategy, const Options& opts = {});

struct OrthogonalityReport {
  /// max over i != j of ||Abar_i Abar_j^T||_F / (||Abar_i||_F ||Abar_j||_F),
  /// or the column analogue.
  double max_offdiag = 0.0;
  /// Zero-based pair attaining the maximum, if any pair is nonzero.
  std::optional<std::pair<std::size_t, std::size_t>> worst_pair;
  bool passed = true;
};

OrthogonalityReport verify_orthogonality(const AugmentedSystem& system, double tol);

/// Same measurement on the raw blocks of a partitioned matrix without any
/// augmentation.
OrthogonalityReport verify_orthogonality(const SparseMatrix& a, const BlockPartition& part,
                                         double tol);

}  // namespace augblock
