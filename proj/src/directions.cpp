#include "asqp/directions.hpp"

#include <cmath>

#include "asqp/error.hpp"

namespace asqp {
namespace {

void require_whitened(const Residual& r0, const char* who) {
  if (r0.space != Space::Whitened) {
    throw Error(ErrorCode::InvalidInput,
                std::string(who) + " needs a residual from the whitened problem");
  }
}

void require_length(const linalg::NullBasis& basis, const Residual& r0) {
  if (r0.r0.size() != basis.cols()) {
    throw Error(ErrorCode::InvalidInput, "residual length does not match basis dimension");
  }
}

}  // namespace

Vector WhitenedProblem::to_whitened(const Vector& x) const {
  return L.transpose().triangularView<Eigen::Upper>() * x;
}

Vector WhitenedProblem::from_whitened(const Vector& x_tilde) const {
  return linalg::tri_solve(L, x_tilde, /*transposed=*/true);
}

Residual WhitenedProblem::residual_at(const Vector& x) const {
  return {to_whitened(x) + q_tilde, Space::Whitened};
}

QpProblem WhitenedProblem::as_problem(const std::optional<Vector>& x0) const {
  QpProblem out;
  out.Q = DenseMatrix::Identity(n(), n());
  out.q = q_tilde;
  out.A = A_tilde;
  out.b = b;
  out.G = G_tilde;
  out.h = h;
  if (x0) out.x0 = to_whitened(*x0);
  return out;
}

WhitenedProblem whiten_problem(const QpProblem& p) {
  WhitenedProblem w;
  w.L = linalg::spd_factor(p.Q);
  w.q_tilde = linalg::tri_solve(w.L, p.q, /*transposed=*/false);
  w.A_tilde = p.m() > 0 ? linalg::tri_solve_rows(w.L, p.A) : DenseMatrix(0, p.n());
  w.G_tilde = p.r() > 0 ? linalg::tri_solve_rows(w.L, p.G) : DenseMatrix(0, p.n());
  w.b = p.b;
  w.h = p.h;
  return w;
}

KktDirection direction_kkt(const DenseMatrix& Q, const DenseMatrix& a0, const Residual& r0) {
  const Eigen::Index n = Q.rows();
  const Eigen::Index s = a0.rows();
  if (r0.r0.size() != n || (s > 0 && a0.cols() != n)) {
    throw Error(ErrorCode::InvalidInput, "KKT system dimension mismatch");
  }
  DenseMatrix kkt = DenseMatrix::Zero(n + s, n + s);
  kkt.topLeftCorner(n, n) = Q;
  if (s > 0) {
    kkt.topRightCorner(n, s) = a0.transpose();
    kkt.bottomLeftCorner(s, n) = a0;
  }
  Vector rhs = Vector::Zero(n + s);
  rhs.head(n) = -r0.r0;

  Eigen::PartialPivLU<DenseMatrix> lu(kkt);
  const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
  if (!(pivots.minCoeff() > 1e-14 * pivots.maxCoeff()) || !(lu.rcond() > 1e-14)) {
    throw Error(ErrorCode::RankDeficientWorkingSet, "KKT matrix is numerically singular");
  }
  const Vector sol = lu.solve(rhs);
  if (!sol.allFinite()) {
    throw Error(ErrorCode::RankDeficientWorkingSet, "KKT solve produced non-finite values");
  }
  return {sol.head(n), sol.tail(s)};
}

Vector direction_projection(const linalg::NullBasis& basis, const Residual& r0) {
  require_whitened(r0, "direction_projection");
  require_length(basis, r0);
  return -(basis.null_basis * (basis.null_basis.transpose() * r0.r0));
}

SphereDirection direction_sphere(const linalg::NullBasis& basis, const Residual& r0) {
  require_whitened(r0, "direction_sphere");
  require_length(basis, r0);
  if (basis.nullity() == 0) {
    throw Error(ErrorCode::EmptyNullSpace, "working matrix has a trivial null space");
  }
  SphereDirection out;
  const Vector reduced = basis.null_basis.transpose() * r0.r0;
  out.sphere.C = 0.5 * reduced;
  out.sphere.Z = -2.0 * out.sphere.C;
  if (basis.nullity() == 2) {
    // Z = -C + ||C|| u with u = -C / ||C||; a zero C leaves u free, pick theta = 0.
    const Vector& c = out.sphere.C;
    out.sphere.theta = c.norm() > 0.0 ? std::atan2(-c(1), -c(0)) : 0.0;
  }
  out.P = basis.null_basis * out.sphere.Z;
  return out;
}

Vector multipliers_at_stationary(const linalg::NullBasis& basis, const Residual& r0) {
  require_length(basis, r0);
  return linalg::pinv_solve(basis, -r0.r0);
}

}  // namespace asqp
