#include "augblock/oracle.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <limits>

#include "augblock/errors.hpp"

namespace augblock::oracle {

namespace {

Eigen::MatrixXd to_eigen(const DenseMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  return out;
}

DenseMatrix from_eigen(const Eigen::MatrixXd& m) {
  DenseMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
  return out;
}

using Svd = Eigen::JacobiSVD<Eigen::MatrixXd>;

Svd compute(const Eigen::MatrixXd& m) { return Svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV); }

Eigen::Index effective_rank(const Eigen::VectorXd& sigma, double rank_tol) {
  if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
  const double cut = rank_tol * sigma(0);
  Eigen::Index r = 0;
  while (r < sigma.size() && sigma(r) > cut) ++r;
  return r;
}

Eigen::MatrixXd pinv_from(const Svd& svd, double rank_tol) {
  const Eigen::VectorXd& sigma = svd.singularValues();
  const Eigen::Index r = effective_rank(sigma, rank_tol);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sigma.size());
  for (Eigen::Index k = 0; k < r; ++k) inv(k) = 1.0 / sigma(k);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

}  // namespace

DenseDecomposition decompose(const DenseMatrix& m, double rank_tol) {
  const Svd svd = compute(to_eigen(m));
  DenseDecomposition out;
  out.u = from_eigen(svd.matrixU());
  out.v = from_eigen(svd.matrixV());
  const Eigen::VectorXd& sigma = svd.singularValues();
  out.singular_values.assign(sigma.data(), sigma.data() + sigma.size());
  out.rank_tol = rank_tol;
  out.rank = static_cast<std::size_t>(effective_rank(sigma, rank_tol));
  return out;
}

LeastSquaresResult minnorm_ls_solve(const DenseMatrix& m, std::span<const double> b,
                                    double rank_tol) {
  if (b.size() != m.rows()) throw DimensionMismatch("minnorm_ls_solve: expected length rows");
  const Eigen::MatrixXd a = to_eigen(m);
  const Eigen::Map<const Eigen::VectorXd> rhs(b.data(), static_cast<Eigen::Index>(b.size()));
  const Svd svd = compute(a);

  // x = V_r diag(1/sigma_r) U_r^T b.
  const Eigen::VectorXd& sigma = svd.singularValues();
  const Eigen::Index r = effective_rank(sigma, rank_tol);
  Eigen::VectorXd coeff = svd.matrixU().leftCols(r).transpose() * rhs;
  for (Eigen::Index k = 0; k < r; ++k) coeff(k) /= sigma(k);
  const Eigen::VectorXd x = svd.matrixV().leftCols(r) * coeff;

  LeastSquaresResult out;
  out.x.assign(x.data(), x.data() + x.size());
  out.rank = static_cast<std::size_t>(r);
  out.residual_squared = (a * x - rhs).squaredNorm();
  return out;
}

DenseMatrix dense_pinv(const DenseMatrix& m, double rank_tol) {
  return from_eigen(pinv_from(compute(to_eigen(m)), rank_tol));
}

double condition_number(const DenseMatrix& m) {
  const Svd svd = compute(to_eigen(m));
  const Eigen::VectorXd& sigma = svd.singularValues();
  if (sigma.size() == 0) return std::numeric_limits<double>::infinity();
  const double smallest = sigma(sigma.size() - 1);
  return smallest > 0.0 ? sigma(0) / smallest : std::numeric_limits<double>::infinity();
}

}  // namespace augblock::oracle
