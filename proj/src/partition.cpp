#include "augblock/partition.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "augblock/errors.hpp"

namespace augblock {

Permutation::Permutation(std::vector<std::size_t> order) : order_(std::move(order)) {
  std::vector<bool> seen(order_.size(), false);
  for (std::size_t idx : order_) {
    if (idx >= order_.size() || seen[idx])
      throw std::invalid_argument("Permutation: not a bijection on 0.." +
                                  std::to_string(order_.size()));
    seen[idx] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  return Permutation(std::move(order));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(order_.size());
  for (std::size_t k = 0; k < order_.size(); ++k) inv[order_[k]] = k;
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
  for (std::size_t k = 0; k < order_.size(); ++k)
    if (order_[k] != k) return false;
  return true;
}

Vector Permutation::apply(std::span<const double> v) const {
  if (order_.empty()) return Vector(v.begin(), v.end());
  if (v.size() != order_.size()) throw DimensionMismatch("Permutation::apply: length mismatch");
  Vector out(v.size());
  for (std::size_t k = 0; k < order_.size(); ++k) out[k] = v[order_[k]];
  return out;
}

Vector Permutation::apply_inverse(std::span<const double> v) const {
  if (order_.empty()) return Vector(v.begin(), v.end());
  if (v.size() != order_.size())
    throw DimensionMismatch("Permutation::apply_inverse: length mismatch");
  Vector out(v.size());
  for (std::size_t k = 0; k < order_.size(); ++k) out[order_[k]] = v[k];
  return out;
}

BlockPartition::BlockPartition(Axis axis, std::vector<std::size_t> boundaries)
    : axis_(axis), boundaries_(std::move(boundaries)) {
  if (boundaries_.empty()) throw InvalidBoundaries("partition needs at least one block");
  std::size_t prev = 0;
  for (std::size_t b : boundaries_) {
    if (b <= prev)
      throw InvalidBoundaries("block boundaries must be strictly increasing and positive");
    prev = b;
  }
}

std::size_t BlockPartition::block_of(std::size_t k) const {
  const auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), k);
  if (it == boundaries_.end()) throw DimensionMismatch("BlockPartition::block_of: out of range");
  return static_cast<std::size_t>(it - boundaries_.begin());
}

BlockPartition BlockPartition::with_permutations(Permutation rows, Permutation cols) const {
  BlockPartition out = *this;
  out.row_perm_ = std::move(rows);
  out.col_perm_ = std::move(cols);
  return out;
}

BlockPartition make_partition(Axis axis, std::size_t extent, std::size_t p) {
  if (p < 1 || p > extent)
    throw InvalidBoundaries("block count " + std::to_string(p) + " must lie in [1, " +
                            std::to_string(extent) + "]");
  std::vector<std::size_t> bounds(p);
  const std::size_t base = extent / p;
  const std::size_t extra = extent % p;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < p; ++i) {
    pos += base + (i < extra ? 1 : 0);
    bounds[i] = pos;
  }
  return BlockPartition(axis, std::move(bounds));
}

BlockPartition make_partition(Axis axis, std::size_t extent, std::vector<std::size_t> boundaries) {
  if (boundaries.empty() || boundaries.back() != extent)
    throw InvalidBoundaries("explicit boundaries must end at extent " + std::to_string(extent));
  return BlockPartition(axis, std::move(boundaries));
}

SparseMatrix apply_permutations(const SparseMatrix& m, const BlockPartition& part) {
  return m.permuted(part.row_perm().order(), part.col_perm().order());
}

DenseMatrix extract_block(const SparseMatrix& permuted, const BlockPartition& part, std::size_t i) {
  if (part.axis() == Axis::rows) {
    if (part.extent() != permuted.rows())
      throw DimensionMismatch("extract_block: partition extent differs from row count");
    return permuted.dense_rows(part.begin(i), part.end(i));
  }
  if (part.extent() != permuted.cols())
    throw DimensionMismatch("extract_block: partition extent differs from column count");
  return permuted.dense_cols(part.begin(i), part.end(i));
}

RcmOrdering rcm_permutation(const SparseMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  if (m.nnz() == rows * cols) return {Permutation::identity(rows), Permutation::identity(cols)};

  // Vertices 0..rows-1 are rows, rows..rows+cols-1 are columns.
  const std::size_t nv = rows + cols;
  std::vector<std::vector<std::size_t>> adj(nv);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j : m.row_cols(i)) {
      adj[i].push_back(rows + j);
      adj[rows + j].push_back(i);
    }
  }
  std::vector<std::size_t> degree(nv);
  for (std::size_t v = 0; v < nv; ++v) degree[v] = adj[v].size();
  const auto by_degree = [&](std::size_t a, std::size_t b) {
    return degree[a] != degree[b] ? degree[a] < degree[b] : a < b;
  };
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end(), by_degree);

  std::vector<bool> in_component(nv, false);
  std::vector<bool> visited(nv, false);
  std::vector<std::size_t> sequence;
  sequence.reserve(nv);

  for (std::size_t seed = 0; seed < nv; ++seed) {
    if (in_component[seed]) continue;

    // Collect the component to pick its start vertex.
    std::vector<std::size_t> component{seed};
    in_component[seed] = true;
    for (std::size_t k = 0; k < component.size(); ++k)
      for (std::size_t w : adj[component[k]])
        if (!in_component[w]) {
          in_component[w] = true;
          component.push_back(w);
        }
    const std::size_t start = *std::min_element(component.begin(), component.end(), by_degree);

    const std::size_t first = sequence.size();
    std::queue<std::size_t> bfs;
    bfs.push(start);
    visited[start] = true;
    while (!bfs.empty()) {
      const std::size_t v = bfs.front();
      bfs.pop();
      sequence.push_back(v);
      for (std::size_t w : adj[v])
        if (!visited[w]) {
          visited[w] = true;
          bfs.push(w);
        }
    }
    std::reverse(sequence.begin() + static_cast<std::ptrdiff_t>(first), sequence.end());
  }

  std::vector<std::size_t> row_order, col_order;
  row_order.reserve(rows);
  col_order.reserve(cols);
  for (std::size_t v : sequence) {
    if (v < rows)
      row_order.push_back(v);
    else
      col_order.push_back(v - rows);
  }
  return {Permutation(std::move(row_order)), Permutation(std::move(col_order))};
}

std::size_t bandwidth(const SparseMatrix& m) {
  std::size_t bw = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j : m.row_cols(i)) bw = std::max(bw, i > j ? i - j : j - i);
  return bw;
}

std::vector<std::pair<std::size_t, std::size_t>> overlap_pairs(const SparseMatrix& m,
                                                                const BlockPartition& part) {
  SparseMatrix a = apply_permutations(m, part);
  if (part.axis() == Axis::cols) a = a.transposed();
  if (a.rows() != part.extent())
    throw DimensionMismatch("overlap_pairs: partition extent does not match the matrix");

  const std::size_t p = part.block_count();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t bi = 0; bi < p; ++bi) {
    for (std::size_t bj = bi + 1; bj < p; ++bj) {
      bool nonzero = false;
      for (std::size_t r = part.begin(bi); r < part.end(bi) && !nonzero; ++r) {
        const auto rc = a.row_cols(r);
        const auto rv = a.row_values(r);
        for (std::size_t s = part.begin(bj); s < part.end(bj) && !nonzero; ++s) {
          const auto sc = a.row_cols(s);
          const auto sv = a.row_values(s);
          double d = 0.0;
          std::size_t x = 0, y = 0;
          while (x < rc.size() && y < sc.size()) {
            if (rc[x] < sc[y]) {
              ++x;
            } else if (sc[y] < rc[x]) {
              ++y;
            } else {
              d += rv[x++] * sv[y++];
            }
          }
          nonzero = d != 0.0;
        }
      }
      if (nonzero) pairs.emplace_back(bi, bj);
    }
  }
  return pairs;
}

}  // namespace augblock
