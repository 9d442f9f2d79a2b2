#include "asqp/linalg.hpp"

#include <cmath>
#include <string>

#include "asqp/error.hpp"

namespace asqp::linalg {

bool all_finite(const DenseMatrix& m) { return m.allFinite(); }

NullBasis svd_null_basis(const DenseMatrix& a0, double rank_tol) {
  if (!(rank_tol > 0.0)) {
    throw Error(ErrorCode::InvalidInput, "rank_tol must be positive");
  }
  if (!a0.allFinite()) {
    throw Error(ErrorCode::InvalidMatrix, "active matrix has non-finite entries");
  }
  const Eigen::Index s = a0.rows();
  const Eigen::Index n = a0.cols();

  NullBasis out;
  if (s == 0 || n == 0) {
    out.rank = 0;
    out.range_basis.resize(n, 0);
    out.null_basis = DenseMatrix::Identity(n, n);
    out.left_vectors = DenseMatrix::Identity(s, s);
    out.singular_values.resize(0);
    return out;
  }

  Eigen::BDCSVD<DenseMatrix> svd(a0, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& sigma = svd.singularValues();
  const double smax = sigma.size() > 0 ? sigma(0) : 0.0;

  Eigen::Index k = 0;
  if (smax > 0.0) {
    while (k < sigma.size() && sigma(k) > rank_tol * smax) ++k;
  }
  out.rank = k;
  out.singular_values = sigma.head(k);
  out.left_vectors = svd.matrixU();
  out.range_basis = svd.matrixV().leftCols(k);
  out.null_basis = svd.matrixV().rightCols(n - k);
  return out;
}

Eigen::Index numerical_rank(const DenseMatrix& a0, double rank_tol) {
  if (!a0.allFinite()) {
    throw Error(ErrorCode::InvalidMatrix, "active matrix has non-finite entries");
  }
  if (a0.rows() == 0 || a0.cols() == 0) return 0;
  Eigen::BDCSVD<DenseMatrix> svd(a0);
  const Vector& sigma = svd.singularValues();
  if (sigma(0) <= 0.0) return 0;
  return (sigma.array() > rank_tol * sigma(0)).count();
}

Vector pinv_solve(const NullBasis& basis, const Vector& rhs) {
  if (rhs.size() != basis.cols()) {
    throw Error(ErrorCode::InvalidInput, "rhs length " + std::to_string(rhs.size()) +
                                             " does not match column count " +
                                             std::to_string(basis.cols()));
  }
  if (basis.rank == 0) {
    throw Error(ErrorCode::NoActiveRows, "pseudoinverse of a rank-zero matrix");
  }
  const Vector coords = basis.range_basis.transpose() * rhs;
  return basis.left_compact() * coords.cwiseQuotient(basis.singular_values);
}

DenseMatrix spd_factor(const DenseMatrix& q, double sym_tol) {
  if (q.rows() != q.cols()) {
    throw Error(ErrorCode::InvalidInput, "quadratic term is not square");
  }
  if (!q.allFinite()) {
    throw Error(ErrorCode::InvalidMatrix, "quadratic term has non-finite entries");
  }
  const double asym = (q - q.transpose()).cwiseAbs().maxCoeff();
  if (q.size() > 0 && asym > sym_tol * std::max(1.0, q.cwiseAbs().maxCoeff())) {
    throw Error(ErrorCode::InvalidInput,
                "quadratic term is not symmetric (max asymmetry " + std::to_string(asym) + ")");
  }
  Eigen::LLT<DenseMatrix> llt(q);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::NotPositiveDefinite, "Cholesky encountered a nonpositive pivot");
  }
  DenseMatrix lower = llt.matrixL();
  if ((lower.diagonal().array() <= 0.0).any()) {
    throw Error(ErrorCode::NotPositiveDefinite, "Cholesky factor has a nonpositive diagonal");
  }
  return lower;
}

Vector tri_solve(const DenseMatrix& lower, const Vector& rhs, bool transposed) {
  if (lower.rows() != lower.cols() || rhs.size() != lower.rows()) {
    throw Error(ErrorCode::InvalidInput, "triangular solve dimension mismatch");
  }
  if (transposed) {
    return lower.transpose().triangularView<Eigen::Upper>().solve(rhs);
  }
  return lower.triangularView<Eigen::Lower>().solve(rhs);
}

DenseMatrix tri_solve_rows(const DenseMatrix& lower, const DenseMatrix& m) {
  if (lower.rows() != lower.cols() || m.cols() != lower.rows()) {
    throw Error(ErrorCode::InvalidInput, "triangular solve dimension mismatch");
  }
  // X L^T = M  <=>  L X^T = M^T
  DenseMatrix xt = lower.triangularView<Eigen::Lower>().solve(m.transpose());
  return xt.transpose();
}

}  // namespace asqp::linalg
