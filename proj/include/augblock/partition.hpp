#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "augblock/matrix.hpp"

namespace augblock {

/// Reordering of 0..n-1. order()[k] is the original index placed at
/// position k. A default-constructed (empty) permutation acts as the identity
/// of any size.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> order);

  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return order_.size(); }
  bool empty() const noexcept { return order_.empty(); }
  std::span<const std::size_t> order() const noexcept { return order_; }
  std::size_t operator[](std::size_t k) const { return order_.empty() ? k : order_[k]; }

  Permutation inverse() const;
  bool is_identity() const;

  /// out[k] = v[order[k]]: original ordering -> permuted ordering.
  Vector apply(std::span<const double> v) const;
  /// out[order[k]] = v[k]: permuted ordering -> original ordering.
  Vector apply_inverse(std::span<const double> v) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> order_;
};

enum class Axis { rows, cols };

/// Contiguous blocks N_1..N_p of the row (or column) index range of a
/// reordered matrix, together with the row and column permutations that
/// produced the reordering.
///
/// boundaries() holds the exclusive block ends mu_1 < ... < mu_p = extent,
/// so block i covers [mu_{i-1}, mu_i) with mu_0 = 0.
class BlockPartition {
 public:
  BlockPartition(Axis axis, std::vector<std::size_t> boundaries);

  Axis axis() const noexcept { return axis_; }
  std::size_t block_count() const noexcept { return boundaries_.size(); }
  std::size_t extent() const noexcept { return boundaries_.back(); }
  std::span<const std::size_t> boundaries() const noexcept { return boundaries_; }

  std::size_t begin(std::size_t i) const { return i == 0 ? 0 : boundaries_[i - 1]; }
  std::size_t end(std::size_t i) const { return boundaries_[i]; }
  std::size_t size(std::size_t i) const { return end(i) - begin(i); }
  /// Block containing index k of the partitioned axis.
  std::size_t block_of(std::size_t k) const;

  const Permutation& row_perm() const noexcept { return row_perm_; }
  const Permutation& col_perm() const noexcept { return col_perm_; }
  BlockPartition with_permutations(Permutation rows, Permutation cols) const;

 private:
  Axis axis_;
  std::vector<std::size_t> boundaries_;
  Permutation row_perm_;
  Permutation col_perm_;
};

/// Equal split: block sizes differ by at most one, larger blocks first.
BlockPartition make_partition(Axis axis, std::size_t extent, std::size_t p);
/// Explicit exclusive block ends; must be strictly increasing and end at extent.
BlockPartition make_partition(Axis axis, std::size_t extent, std::vector<std::size_t> boundaries);

/// P M Q for the partition's permutations.
SparseMatrix apply_permutations(const SparseMatrix& m, const BlockPartition& part);

/// Dense copy of block i of an already permuted matrix: rows of the block for
/// a row partition, columns for a column partition.
DenseMatrix extract_block(const SparseMatrix& permuted, const BlockPartition& part, std::size_t i);

struct RcmOrdering {
  Permutation rows;
  Permutation cols;
};

/// Reverse Cuthill-McKee on the bipartite row/column graph of m's pattern.
///
/// Each connected component starts from its minimum-degree vertex, neighbours
/// are visited by ascending (degree, index), and the component's sequence is
/// reversed in place. Row and column orders are read off the combined
/// sequence. Fully dense patterns return identity orderings.
RcmOrdering rcm_permutation(const SparseMatrix& m);

/// max |i - j| over stored entries.
std::size_t bandwidth(const SparseMatrix& m);

/// Zero-based block pairs (i, j), i < j, whose product A_i A_j^T (row axis) or
/// (A^i)^T A^j (column axis) is nonzero. The partition's permutations are
/// applied to m first.
std::vector<std::pair<std::size_t, std::size_t>> overlap_pairs(const SparseMatrix& m,
                                                                const BlockPartition& part);

}  // namespace augblock
