#include "augblock/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "augblock/errors.hpp"

namespace augblock {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DimensionMismatch(what);
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> column_major)
    : rows_(rows), cols_(cols), values_(std::move(column_major)) {
  require(values_.size() == rows_ * cols_, "DenseMatrix: value count does not match shape");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix id(n, n);
  for (std::size_t i = 0; i < n; ++i) id(i, i) = 1.0;
  return id;
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t m = rows.size();
  const std::size_t n = m == 0 ? 0 : rows.begin()->size();
  DenseMatrix out(m, n);
  std::size_t i = 0;
  for (const auto& row : rows) {
    require(row.size() == n, "DenseMatrix::from_rows: ragged rows");
    std::size_t j = 0;
    for (double v : row) out(i, j++) = v;
    ++i;
  }
  return out;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i) t(j, i) = (*this)(i, j);
  return t;
}

double DenseMatrix::frobenius_norm() const { return norm2(values_); }

DenseMatrix DenseMatrix::row_range(std::size_t begin, std::size_t end) const {
  require(begin <= end && end <= rows_, "DenseMatrix::row_range: out of range");
  DenseMatrix out(end - begin, cols_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = begin; i < end; ++i) out(i - begin, j) = (*this)(i, j);
  return out;
}

DenseMatrix DenseMatrix::col_range(std::size_t begin, std::size_t end) const {
  require(begin <= end && end <= cols_, "DenseMatrix::col_range: out of range");
  std::vector<double> vals(values_.begin() + static_cast<std::ptrdiff_t>(begin * rows_),
                           values_.begin() + static_cast<std::ptrdiff_t>(end * rows_));
  return DenseMatrix(rows_, end - begin, std::move(vals));
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> entries)
    : rows_(rows), cols_(cols) {
  for (const auto& t : entries) {
    if (t.row >= rows || t.col >= cols)
      throw DimensionMismatch("SparseMatrix: entry (" + std::to_string(t.row) + ", " +
                              std::to_string(t.col) + ") outside " + std::to_string(rows) +
                              "x" + std::to_string(cols));
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  row_ptr_.assign(rows + 1, 0);
  col_idx_.reserve(entries.size());
  values_.reserve(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& t = entries[k];
    if (!values_.empty() && k > 0 && entries[k - 1].row == t.row && entries[k - 1].col == t.col) {
      values_.back() += t.value;
      continue;
    }
    col_idx_.push_back(t.col);
    values_.push_back(t.value);
    ++row_ptr_[t.row + 1];
  }
  std::partial_sum(row_ptr_.begin(), row_ptr_.end(), row_ptr_.begin());
}

SparseMatrix SparseMatrix::from_dense(const DenseMatrix& dense) {
  std::vector<Triplet> entries;
  for (std::size_t j = 0; j < dense.cols(); ++j)
    for (std::size_t i = 0; i < dense.rows(); ++i)
      if (dense(i, j) != 0.0) entries.push_back({i, j, dense(i, j)});
  return SparseMatrix(dense.rows(), dense.cols(), std::move(entries));
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<Triplet> entries;
  entries.reserve(n);
  for (std::size_t i = 0; i < n; ++i) entries.push_back({i, i, 1.0});
  return SparseMatrix(n, n, std::move(entries));
}

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      out.push_back({i, col_idx_[k], values_[k]});
  return out;
}

DenseMatrix SparseMatrix::to_dense() const {
  DenseMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) out(i, col_idx_[k]) = values_[k];
  return out;
}

SparseMatrix SparseMatrix::transposed() const {
  auto entries = triplets();
  for (auto& t : entries) std::swap(t.row, t.col);
  return SparseMatrix(cols_, rows_, std::move(entries));
}

SparseMatrix SparseMatrix::permuted(std::span<const std::size_t> row_order,
                                    std::span<const std::size_t> col_order) const {
  require(row_order.empty() || row_order.size() == rows_, "SparseMatrix::permuted: row order size");
  require(col_order.empty() || col_order.size() == cols_, "SparseMatrix::permuted: col order size");
  // Inverse maps: original index -> new position.
  std::vector<std::size_t> row_pos(rows_), col_pos(cols_);
  std::iota(row_pos.begin(), row_pos.end(), 0);
  std::iota(col_pos.begin(), col_pos.end(), 0);
  for (std::size_t k = 0; k < row_order.size(); ++k) row_pos[row_order[k]] = k;
  for (std::size_t k = 0; k < col_order.size(); ++k) col_pos[col_order[k]] = k;

  auto entries = triplets();
  for (auto& t : entries) {
    t.row = row_pos[t.row];
    t.col = col_pos[t.col];
  }
  return SparseMatrix(rows_, cols_, std::move(entries));
}

DenseMatrix SparseMatrix::dense_rows(std::size_t begin, std::size_t end) const {
  require(begin <= end && end <= rows_, "SparseMatrix::dense_rows: out of range");
  DenseMatrix out(end - begin, cols_);
  for (std::size_t i = begin; i < end; ++i)
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      out(i - begin, col_idx_[k]) = values_[k];
  return out;
}

DenseMatrix SparseMatrix::dense_cols(std::size_t begin, std::size_t end) const {
  require(begin <= end && end <= cols_, "SparseMatrix::dense_cols: out of range");
  DenseMatrix out(rows_, end - begin);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      if (col_idx_[k] >= begin && col_idx_[k] < end) out(i, col_idx_[k] - begin) = values_[k];
  return out;
}

double SparseMatrix::frobenius_norm() const { return norm2(values_); }

Vector matvec(const DenseMatrix& m, std::span<const double> v, Transpose t) {
  if (t == Transpose::no) {
    require(v.size() == m.cols(), "matvec: vector length must equal column count");
    Vector out(m.rows(), 0.0);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double vj = v[j];
      if (vj == 0.0) continue;
      const auto c = m.col(j);
      for (std::size_t i = 0; i < m.rows(); ++i) out[i] += c[i] * vj;
    }
    return out;
  }
  require(v.size() == m.rows(), "matvec: vector length must equal row count");
  Vector out(m.cols(), 0.0);
  for (std::size_t j = 0; j < m.cols(); ++j) out[j] = dot(m.col(j), v);
  return out;
}

Vector matvec(const SparseMatrix& m, std::span<const double> v, Transpose t) {
  if (t == Transpose::no) {
    require(v.size() == m.cols(), "matvec: vector length must equal column count");
    Vector out(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const auto cols = m.row_cols(i);
      const auto vals = m.row_values(i);
      double s = 0.0;
      for (std::size_t k = 0; k < cols.size(); ++k) s += vals[k] * v[cols[k]];
      out[i] = s;
    }
    return out;
  }
  require(v.size() == m.rows(), "matvec: vector length must equal row count");
  Vector out(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto cols = m.row_cols(i);
    const auto vals = m.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) out[cols[k]] += vals[k] * v[i];
  }
  return out;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  require(a.cols() == b.rows(), "multiply: inner dimensions differ");
  DenseMatrix out(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    auto oc = out.col(j);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double bkj = b(k, j);
      if (bkj == 0.0) continue;
      const auto ac = a.col(k);
      for (std::size_t i = 0; i < a.rows(); ++i) oc[i] += ac[i] * bkj;
    }
  }
  return out;
}

DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "subtract: shapes differ");
  DenseMatrix out = a;
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) out(i, j) -= b(i, j);
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), "dot: lengths differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> v) {
  // Scaled to avoid overflow on large entries.
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double s = 0.0;
  for (double x : v) {
    const double r = x / scale;
    s += r * r;
  }
  return scale * std::sqrt(s);
}

Vector subtract(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), "subtract: lengths differ");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vector add(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), "add: lengths differ");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vector stack(std::span<const double> a, std::span<const double> b) {
  Vector out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace augblock
