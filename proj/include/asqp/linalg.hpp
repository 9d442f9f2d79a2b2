#pragma once

#include <Eigen/Dense>

namespace asqp {

using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

namespace linalg {

/// Relative singular-value threshold used to decide the numerical rank.
inline constexpr double kDefaultRankTol = 1e-12;

/// SVD-derived factors of a (possibly empty) stacked active matrix A0 (s x n).
///
/// The decomposition is stored in compact form: A0 = U_k diag(sigma) V_k^T.
/// The square left factor is kept as well so callers that need the cokernel
/// (columns k..s-1 of U) can reach it.
struct NullBasis {
  Eigen::Index rank = 0;
  DenseMatrix range_basis;   // V_k, n x k
  DenseMatrix null_basis;    // V_{n-k}, n x (n-k)
  DenseMatrix left_vectors;  // U, s x s
  Vector singular_values;    // length k, strictly positive, nonincreasing

  Eigen::Index rows() const { return left_vectors.rows(); }
  Eigen::Index cols() const { return range_basis.rows(); }
  Eigen::Index nullity() const { return null_basis.cols(); }
  double sigma_max() const { return rank > 0 ? singular_values(0) : 0.0; }

  /// First k columns of U (the compact reading of the decomposition).
  auto left_compact() const { return left_vectors.leftCols(rank); }
  /// Orthogonal projector onto null(A0).
  DenseMatrix null_projector() const { return null_basis * null_basis.transpose(); }
};

bool all_finite(const DenseMatrix& m);

/// Computes the SVD of a0 and splits V into range and null-space bases.
/// Singular values with sigma_i <= rank_tol * sigma_max are treated as zero.
/// Throws Error(InvalidMatrix) on non-finite entries or a nonpositive tolerance.
NullBasis svd_null_basis(const DenseMatrix& a0, double rank_tol = kDefaultRankTol);

/// Rank of a0 under the same threshold rule as svd_null_basis, computed from
/// the singular values alone.
Eigen::Index numerical_rank(const DenseMatrix& a0, double rank_tol = kDefaultRankTol);

/// Minimum-norm least-squares solution of A0^T lambda = rhs, computed as
/// U_k diag(sigma)^-1 V_k^T rhs. Throws Error(NoActiveRows) when rank is 0.
Vector pinv_solve(const NullBasis& basis, const Vector& rhs);

/// Lower-triangular Cholesky factor L with Q = L L^T.
/// Throws Error(InvalidInput) for non-square or asymmetric input and
/// Error(NotPositiveDefinite) when a pivot is nonpositive.
DenseMatrix spd_factor(const DenseMatrix& q, double sym_tol = 1e-10);

/// Solves L y = rhs (transposed = false) or L^T y = rhs (transposed = true).
Vector tri_solve(const DenseMatrix& lower, const Vector& rhs, bool transposed);

/// Row-wise variant: returns M L^{-T}, i.e. solves X L^T = M.
DenseMatrix tri_solve_rows(const DenseMatrix& lower, const DenseMatrix& m);

}  // namespace linalg
}  // namespace asqp
