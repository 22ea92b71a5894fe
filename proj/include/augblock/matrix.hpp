#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace augblock {

using Vector = std::vector<double>;

enum class Transpose : bool { no = false, yes = true };

/// Dense real matrix, column-major.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> column_major);

  static DenseMatrix identity(std::size_t n);
  /// Row-major nested list, convenient for small literals in tests.
  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  double& operator()(std::size_t i, std::size_t j) { return values_[j * rows_ + i]; }
  double operator()(std::size_t i, std::size_t j) const { return values_[j * rows_ + i]; }

  std::span<double> col(std::size_t j) { return {values_.data() + j * rows_, rows_}; }
  std::span<const double> col(std::size_t j) const { return {values_.data() + j * rows_, rows_}; }

  std::span<const double> values() const noexcept { return values_; }

  DenseMatrix transposed() const;
  double frobenius_norm() const;
  /// Rows [begin, end) as a new matrix.
  DenseMatrix row_range(std::size_t begin, std::size_t end) const;
  /// Columns [begin, end) as a new matrix.
  DenseMatrix col_range(std::size_t begin, std::size_t end) const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;

  friend bool operator==(const Triplet&, const Triplet&) = default;
};

/// Sparse real matrix assembled from coordinate triplets.
///
/// Entries are kept sorted by (row, col) with duplicates summed at assembly,
/// so each (row, col) pair appears at most once. Stored zeros are kept; they
/// only disappear when going through a dense round trip.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);

  static SparseMatrix from_dense(const DenseMatrix& dense);
  static SparseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  /// Column indices and values of row i, sorted by column.
  std::span<const std::size_t> row_cols(std::size_t i) const {
    return {col_idx_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  std::span<const double> row_values(std::size_t i) const {
    return {values_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }

  std::vector<Triplet> triplets() const;
  DenseMatrix to_dense() const;
  SparseMatrix transposed() const;

  /// Returns B with B(k, l) = (*this)(row_order[k], col_order[l]).
  /// An empty order means identity.
  SparseMatrix permuted(std::span<const std::size_t> row_order,
                        std::span<const std::size_t> col_order) const;

  /// Dense copy of rows [begin, end).
  DenseMatrix dense_rows(std::size_t begin, std::size_t end) const;
  /// Dense copy of columns [begin, end).
  DenseMatrix dense_cols(std::size_t begin, std::size_t end) const;

  double frobenius_norm() const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
};

Vector matvec(const DenseMatrix& m, std::span<const double> v, Transpose t = Transpose::no);
Vector matvec(const SparseMatrix& m, std::span<const double> v, Transpose t = Transpose::no);

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b);

// Small vector helpers.
double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);
Vector subtract(std::span<const double> a, std::span<const double> b);
Vector add(std::span<const double> a, std::span<const double> b);
/// Concatenation [a; b].
Vector stack(std::span<const double> a, std::span<const double> b);

}  // namespace augblock
