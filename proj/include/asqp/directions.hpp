#pragma once

#include <optional>

#include "asqp/linalg.hpp"
#include "asqp/model.hpp"

namespace asqp {

/// The problem after the change of variable x~ = L^T x, where Q = L L^T.
/// The quadratic term becomes the identity; constraints become A L^{-T} and
/// G L^{-T} with unchanged right-hand sides.
struct WhitenedProblem {
  DenseMatrix L;
  Vector q_tilde;
  DenseMatrix A_tilde;
  DenseMatrix G_tilde;
  Vector b;
  Vector h;

  Eigen::Index n() const { return L.rows(); }

  Vector to_whitened(const Vector& x) const;
  /// x = L^{-T} x~. Also maps whitened directions back to the original space.
  Vector from_whitened(const Vector& x_tilde) const;
  /// Gradient of the whitened objective at the whitened image of x.
  Residual residual_at(const Vector& x) const;
  double objective(const Vector& x_tilde) const {
    return 0.5 * x_tilde.squaredNorm() + q_tilde.dot(x_tilde);
  }
  /// The whitened instance as an ordinary problem with Q = I.
  QpProblem as_problem(const std::optional<Vector>& x0 = std::nullopt) const;
};

/// Throws Error(NotPositiveDefinite) when Q has no Cholesky factor.
WhitenedProblem whiten_problem(const QpProblem& problem);

struct KktDirection {
  Vector P;
  Vector lambda;
};

/// Baseline direction: solves [[Q, A0^T], [A0, 0]] (P, lambda) = (-r0, 0) with
/// a dense partially pivoted LU. Throws Error(RankDeficientWorkingSet) if the
/// KKT matrix is numerically singular.
KktDirection direction_kkt(const DenseMatrix& Q, const DenseMatrix& a0, const Residual& r0);

/// Null-space projection P = -V_{n-k} V_{n-k}^T r0. Valid when Q = I, so r0
/// must come from the whitened space.
Vector direction_projection(const linalg::NullBasis& basis, const Residual& r0);

/// Reduced coordinates of the sphere characterisation Z^T Z = -r~^T Z, i.e.
/// ||Z + C|| = ||C|| with C = r~ / 2 and r~ = V_{n-k}^T r0.
struct SphereSolution {
  Vector C;
  Vector Z;
  /// Only for a two-dimensional null space: Z = -C + ||C|| (cos theta, sin theta).
  std::optional<double> theta;
};

struct SphereDirection {
  Vector P;
  SphereSolution sphere;
};

/// Selects the KKT point Z = -2C on the sphere and lifts it, P = V_{n-k} Z.
/// Throws Error(EmptyNullSpace) when the null space is trivial.
SphereDirection direction_sphere(const linalg::NullBasis& basis, const Residual& r0);

/// Multipliers at a stationary point of the subproblem: the minimum-norm
/// solution of A0^T lambda = -r0, ordered like the rows of A0.
Vector multipliers_at_stationary(const linalg::NullBasis& basis, const Residual& r0);

}  // namespace asqp
