#include "augblock/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "augblock/errors.hpp"

namespace augblock {

HouseholderQR::HouseholderQR(DenseMatrix a) : qr_(std::move(a)), tau_(qr_.cols(), 0.0) {
  const std::size_t m = qr_.rows();
  const std::size_t n = qr_.cols();
  if (m < n) throw DimensionMismatch("HouseholderQR: needs rows >= cols");

  for (std::size_t k = 0; k < n; ++k) {
    auto ck = qr_.col(k);
    const double alpha = ck[k];
    const double tail = norm2(ck.subspan(k + 1));
    if (tail == 0.0) {
      tau_[k] = 0.0;
      continue;
    }
    const double beta = -std::copysign(std::hypot(alpha, tail), alpha);
    tau_[k] = (beta - alpha) / beta;
    const double scale = 1.0 / (alpha - beta);
    for (std::size_t i = k + 1; i < m; ++i) ck[i] *= scale;
    ck[k] = beta;

    // Apply H_k = I - tau v v^T (v_k = 1) to the trailing columns.
    for (std::size_t j = k + 1; j < n; ++j) {
      auto cj = qr_.col(j);
      double s = cj[k];
      for (std::size_t i = k + 1; i < m; ++i) s += ck[i] * cj[i];
      s *= tau_[k];
      cj[k] -= s;
      for (std::size_t i = k + 1; i < m; ++i) cj[i] -= s * ck[i];
    }
  }
}

DenseMatrix HouseholderQR::r() const {
  const std::size_t n = qr_.cols();
  DenseMatrix out(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i <= j; ++i) out(i, j) = qr_(i, j);
  return out;
}

Vector HouseholderQR::apply_qt(std::span<const double> v) const {
  const std::size_t m = qr_.rows();
  const std::size_t n = qr_.cols();
  if (v.size() != m) throw DimensionMismatch("HouseholderQR::apply_qt: length mismatch");
  Vector w(v.begin(), v.end());
  for (std::size_t k = 0; k < n; ++k) {
    if (tau_[k] == 0.0) continue;
    const auto ck = qr_.col(k);
    double s = w[k];
    for (std::size_t i = k + 1; i < m; ++i) s += ck[i] * w[i];
    s *= tau_[k];
    w[k] -= s;
    for (std::size_t i = k + 1; i < m; ++i) w[i] -= s * ck[i];
  }
  w.resize(n);
  return w;
}

Vector HouseholderQR::apply_q(std::span<const double> x) const {
  const std::size_t m = qr_.rows();
  const std::size_t n = qr_.cols();
  if (x.size() != n) throw DimensionMismatch("HouseholderQR::apply_q: length mismatch");
  Vector w(m, 0.0);
  std::copy(x.begin(), x.end(), w.begin());
  for (std::size_t k = n; k-- > 0;) {
    if (tau_[k] == 0.0) continue;
    const auto ck = qr_.col(k);
    double s = w[k];
    for (std::size_t i = k + 1; i < m; ++i) s += ck[i] * w[i];
    s *= tau_[k];
    w[k] -= s;
    for (std::size_t i = k + 1; i < m; ++i) w[i] -= s * ck[i];
  }
  return w;
}

Vector HouseholderQR::solve_r(std::span<const double> w) const {
  const std::size_t n = qr_.cols();
  if (w.size() != n) throw DimensionMismatch("HouseholderQR::solve_r: length mismatch");
  Vector x(w.begin(), w.end());
  for (std::size_t k = n; k-- > 0;) {
    double s = x[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= qr_(k, j) * x[j];
    x[k] = s / qr_(k, k);
  }
  return x;
}

Vector HouseholderQR::solve_rt(std::span<const double> w) const {
  const std::size_t n = qr_.cols();
  if (w.size() != n) throw DimensionMismatch("HouseholderQR::solve_rt: length mismatch");
  Vector x(w.begin(), w.end());
  for (std::size_t k = 0; k < n; ++k) {
    const auto ck = qr_.col(k);
    double s = x[k];
    for (std::size_t i = 0; i < k; ++i) s -= ck[i] * x[i];
    x[k] = s / ck[k];
  }
  return x;
}

Cholesky::Cholesky(const DenseMatrix& s, double pivot_tol) : l_(s.rows(), s.cols()) {
  const std::size_t n = s.rows();
  if (s.cols() != n) throw DimensionMismatch("Cholesky: matrix must be square");
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, s(i, i));
  const double threshold = pivot_tol * max_diag;

  for (std::size_t j = 0; j < n; ++j) {
    double d = s(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l_(j, k) * l_(j, k);
    if (!(d > threshold)) {
      std::ostringstream msg;
      msg << "Cholesky: pivot " << j << " = " << d << " not above " << threshold
          << " (matrix is not numerically positive definite)";
      throw NotPositiveDefinite(j, d, msg.str());
    }
    const double ljj = std::sqrt(d);
    l_(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = s(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= l_(i, k) * l_(j, k);
      l_(i, j) = v / ljj;
    }
  }
}

Vector Cholesky::solve(std::span<const double> b) const {
  const std::size_t n = l_.rows();
  if (b.size() != n) throw DimensionMismatch("Cholesky::solve: length mismatch");
  Vector x(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    double v = x[i];
    for (std::size_t k = 0; k < i; ++k) v -= l_(i, k) * x[k];
    x[i] = v / l_(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    double v = x[i];
    for (std::size_t k = i + 1; k < n; ++k) v -= l_(k, i) * x[k];
    x[i] = v / l_(i, i);
  }
  return x;
}

BlockFactorization::BlockFactorization(DenseMatrix block, Orientation orientation,
                                       double rank_tol)
    : block_(std::move(block)), orientation_(orientation) {
  const bool row = orientation_ == Orientation::row;
  const std::size_t want = row ? block_.rows() : block_.cols();
  const std::size_t other = row ? block_.cols() : block_.rows();
  if (want == 0) throw DimensionMismatch("BlockFactorization: empty block");
  if (want > other) {
    throw RankDeficient(RankDeficient::kUnknownBlock, 0.0,
                        "block with " + std::to_string(want) + (row ? " rows" : " columns") +
                            " cannot have full rank in dimension " + std::to_string(other));
  }

  qr_ = HouseholderQR(row ? block_.transposed() : block_);

  double largest = 0.0, smallest = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < want; ++k) {
    const double d = std::abs(qr_.r_diag(k));
    largest = std::max(largest, d);
    smallest = std::min(smallest, d);
  }
  const double ratio = largest > 0.0 ? smallest / largest : 0.0;
  if (!(ratio >= rank_tol)) {
    std::ostringstream msg;
    msg << "block is numerically rank deficient: min|R_kk|/max|R_kk| = " << ratio
        << " below rank_tol " << rank_tol;
    throw RankDeficient(RankDeficient::kUnknownBlock, ratio, msg.str());
  }
}

Vector BlockFactorization::apply_pinv(std::span<const double> v) const {
  if (v.size() != block_.rows()) throw DimensionMismatch("apply_pinv: expected block row count");
  if (orientation_ == Orientation::row) return qr_.apply_q(qr_.solve_rt(v));
  return qr_.solve_r(qr_.apply_qt(v));
}

Vector BlockFactorization::apply_projector(std::span<const double> v) const {
  const std::size_t len = orientation_ == Orientation::row ? block_.cols() : block_.rows();
  if (v.size() != len) throw DimensionMismatch("apply_projector: length mismatch");
  return qr_.apply_q(qr_.apply_qt(v));
}

Vector BlockFactorization::apply_gram_inverse(std::span<const double> w) const {
  if (w.size() != rank()) throw DimensionMismatch("apply_gram_inverse: length mismatch");
  return qr_.solve_r(qr_.solve_rt(w));
}

BlockFactorization factorize_block(const DenseMatrix& m, Orientation orientation,
                                   double rank_tol) {
  return BlockFactorization(m, orientation, rank_tol);
}

}  // namespace augblock
