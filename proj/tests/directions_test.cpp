#include "asqp/directions.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "asqp/error.hpp"
#include "test_utils.hpp"

namespace asqp {
namespace {

using testing::random_matrix;
using testing::random_spd;
using testing::random_vector;

Residual Whitened(Vector v) { return {std::move(v), Space::Whitened}; }
Residual Original(Vector v) { return {std::move(v), Space::Original}; }

DenseMatrix Row(std::initializer_list<double> values) {
  DenseMatrix m(1, static_cast<Eigen::Index>(values.size()));
  Eigen::Index j = 0;
  for (double v : values) m(0, j++) = v;
  return m;
}

double RelErr(const Vector& a, const Vector& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

TEST(WhitenProblem, IdentityLeavesDataUnchanged) {
  std::mt19937_64 rng(1);
  QpProblem p = testing::random_problem(rng, 4, 1, 3);
  p.Q = DenseMatrix::Identity(4, 4);
  const WhitenedProblem w = whiten_problem(p);
  EXPECT_TRUE(w.L.isIdentity(0.0));
  EXPECT_EQ(w.q_tilde, p.q);
  EXPECT_EQ(w.A_tilde, p.A);
  EXPECT_EQ(w.G_tilde, p.G);
}

TEST(WhitenProblem, DiagonalQuadratic) {
  QpProblem p;
  p.Q = DenseMatrix::Zero(2, 2);
  p.Q.diagonal() << 4, 9;
  p.q = Vector{{2.0, 3.0}};
  p.A = DenseMatrix(0, 2);
  p.b = Vector(0);
  p.G = DenseMatrix(0, 2);
  p.h = Vector(0);
  const WhitenedProblem w = whiten_problem(p);
  EXPECT_NEAR(w.q_tilde(0), 1.0, 1e-15);
  EXPECT_NEAR(w.q_tilde(1), 1.0, 1e-15);
}

TEST(WhitenProblem, ObjectiveAndConstraintEquivalence) {
  std::mt19937_64 rng(2);
  const QpProblem p = testing::random_problem(rng, 6, 2, 3);
  const WhitenedProblem w = whiten_problem(p);
  for (int i = 0; i < 20; ++i) {
    const Vector x = random_vector(rng, 6);
    const Vector xt = w.to_whitened(x);
    const double original = p.objective(x);
    EXPECT_NEAR(w.objective(xt), original, 1e-10 * std::max(1.0, std::abs(original)));
    EXPECT_LE((w.A_tilde * xt - p.A * x).norm(), 1e-10 * std::max(1.0, (p.A * x).norm()));
    EXPECT_LE((w.G_tilde * xt - p.G * x).norm(), 1e-10 * std::max(1.0, (p.G * x).norm()));
    EXPECT_LE(RelErr(w.from_whitened(xt), x), 1e-12);
  }
}

TEST(WhitenProblem, RejectsIndefinite) {
  QpProblem p;
  p.Q = DenseMatrix::Identity(2, 2);
  p.Q(1, 1) = -1.0;
  p.q = Vector::Zero(2);
  p.A = DenseMatrix(0, 2);
  p.b = Vector(0);
  p.G = DenseMatrix(0, 2);
  p.h = Vector(0);
  try {
    whiten_problem(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPositiveDefinite);
  }
}

TEST(DirectionKkt, AxisAlignedExample) {
  // Hand oracle: [[1,0,1],[0,1,0],[1,0,0]] (P1, P2, lambda) = (-2, -3, 0).
  DenseMatrix k(3, 3);
  k << 1, 0, 1, 0, 1, 0, 1, 0, 0;
  const Vector oracle = k.fullPivLu().solve(Vector{{-2.0, -3.0, 0.0}});
  const KktDirection d =
      direction_kkt(DenseMatrix::Identity(2, 2), Row({1, 0}), Original(Vector{{2.0, 3.0}}));
  EXPECT_NEAR(d.P(0), 0.0, 1e-15);
  EXPECT_NEAR(d.P(1), -3.0, 1e-15);
  ASSERT_EQ(d.lambda.size(), 1);
  EXPECT_NEAR(d.lambda(0), -2.0, 1e-15);
  EXPECT_NEAR(d.P(1), oracle(1), 1e-15);
  EXPECT_NEAR(d.lambda(0), oracle(2), 1e-15);
}

TEST(DirectionKkt, SquareActiveMatrixGivesZeroStep) {
  std::mt19937_64 rng(3);
  const DenseMatrix a0 = random_matrix(rng, 4, 4);
  const KktDirection d = direction_kkt(random_spd(rng, 4), a0, Original(random_vector(rng, 4)));
  EXPECT_LE(d.P.norm(), 1e-12);
}

TEST(DirectionKkt, UnconstrainedNewtonStep) {
  const Vector r0{{1.0, -4.0}};
  const KktDirection d = direction_kkt(2.0 * DenseMatrix::Identity(2, 2), DenseMatrix(0, 2),
                                       Original(r0));
  EXPECT_LE((d.P + r0 / 2).norm(), 1e-15);
  EXPECT_EQ(d.lambda.size(), 0);
}

TEST(DirectionKkt, SingularSystemIsReported) {
  DenseMatrix a0(2, 2);
  a0 << 1, 0, 2, 0;
  try {
    direction_kkt(DenseMatrix::Identity(2, 2), a0, Original(Vector{{1.0, 1.0}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RankDeficientWorkingSet);
  }
}

TEST(DirectionProjection, ClosedFormExamples) {
  const auto nb = linalg::svd_null_basis(Row({1, 0}));
  const Vector p = direction_projection(nb, Whitened(Vector{{2.0, 3.0}}));
  EXPECT_NEAR(p(0), 0.0, 1e-15);
  EXPECT_NEAR(p(1), -3.0, 1e-15);

  const auto diag = linalg::svd_null_basis(Row({1, 1}));
  EXPECT_LE(direction_projection(diag, Whitened(Vector{{1.0, 1.0}})).norm(), 1e-15);
}

TEST(DirectionProjection, RequiresWhitenedResidual) {
  const auto nb = linalg::svd_null_basis(Row({1, 0}));
  EXPECT_THROW(direction_projection(nb, Original(Vector{{2.0, 3.0}})), Error);
}

TEST(DirectionProjection, MatchesKktOnIdentityQuadratic) {
  std::mt19937_64 rng(4);
  const DenseMatrix a0 = random_matrix(rng, 4, 9);
  const Vector r0 = random_vector(rng, 9);
  const Vector p = direction_projection(linalg::svd_null_basis(a0), Whitened(r0));
  const KktDirection k = direction_kkt(DenseMatrix::Identity(9, 9), a0, Original(r0));
  EXPECT_LE(RelErr(p, k.P), 1e-9);
}

TEST(DirectionSphere, OneDimensionalNullSpace) {
  const auto nb = linalg::svd_null_basis(Row({1, 0}));
  // Choose r0 so that the reduced residual V^T r0 is exactly 3.
  const Vector r0 = 3.0 * nb.null_basis.col(0);
  const SphereDirection d = direction_sphere(nb, Whitened(r0));
  ASSERT_EQ(d.sphere.C.size(), 1);
  EXPECT_DOUBLE_EQ(d.sphere.C(0), 1.5);
  EXPECT_DOUBLE_EQ(d.sphere.Z(0), -3.0);
  EXPECT_FALSE(d.sphere.theta.has_value());
}

TEST(DirectionSphere, ZeroResidualDegeneratesToPoint) {
  const auto nb = linalg::svd_null_basis(Row({1, 0, 0}));
  const SphereDirection d = direction_sphere(nb, Whitened(Vector::Zero(3)));
  EXPECT_EQ(d.sphere.Z, Vector::Zero(2));
  EXPECT_EQ(d.P, Vector::Zero(3));
  ASSERT_TRUE(d.sphere.theta.has_value());
}

TEST(DirectionSphere, TwoDimensionalNullSpaceMatchesProjection) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const DenseMatrix a0 = random_matrix(rng, 3, 5);
    const Vector r0 = random_vector(rng, 5);
    const auto nb = linalg::svd_null_basis(a0);
    ASSERT_EQ(nb.nullity(), 2);
    const SphereDirection d = direction_sphere(nb, Whitened(r0));
    const Vector& c = d.sphere.C;
    const Vector& z = d.sphere.Z;
    EXPECT_LE(std::abs((z + c).norm() - c.norm()), 1e-12 * std::max(1.0, c.norm()));
    EXPECT_LE((z + 2.0 * c).norm(), 1e-12 * std::max(1.0, c.norm()));
    ASSERT_TRUE(d.sphere.theta.has_value());
    const double th = *d.sphere.theta;
    const Vector from_theta = -c + c.norm() * Vector{{std::cos(th), std::sin(th)}};
    EXPECT_LE((from_theta - z).norm(), 1e-12 * std::max(1.0, c.norm()));
    EXPECT_LE((d.P - direction_projection(nb, Whitened(r0))).norm(),
              1e-12 * std::max(1.0, d.P.norm()));
  }
}

TEST(DirectionSphere, EmptyNullSpaceIsAnError) {
  const auto nb = linalg::svd_null_basis(DenseMatrix::Identity(2, 2));
  try {
    direction_sphere(nb, Whitened(Vector{{1.0, 1.0}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyNullSpace);
  }
}

TEST(MultipliersAtStationary, Examples) {
  const auto id = linalg::svd_null_basis(DenseMatrix::Identity(2, 2));
  const Vector lam = multipliers_at_stationary(id, Whitened(Vector{{1.0, -2.0}}));
  EXPECT_NEAR(lam(0), -1.0, 1e-15);
  EXPECT_NEAR(lam(1), 2.0, 1e-15);

  // Terminal iteration of the worked solver example: A0^T lambda = -r0 directly.
  const auto nb = linalg::svd_null_basis(Row({-1, 0}));
  const Vector l1 = multipliers_at_stationary(nb, Whitened(Vector{{1.0, 0.0}}));
  ASSERT_EQ(l1.size(), 1);
  EXPECT_NEAR(l1(0), 1.0, 1e-15);

  const auto axis = linalg::svd_null_basis(Row({1, 0}));
  EXPECT_LE(multipliers_at_stationary(axis, Whitened(Vector{{0.0, 5.0}})).norm(), 1e-15);
}

// Property suite over random (n, k) pairs.
TEST(DirectionProperties, SchemeEquivalenceDescentAndFeasibility) {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> pick_n(1, 40);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = pick_n(rng);
    const int k = std::uniform_int_distribution<int>(0, n)(rng);
    const DenseMatrix a0 = random_matrix(rng, k, n);
    const Vector r0 = random_vector(rng, n);
    const auto nb = linalg::svd_null_basis(a0);
    ASSERT_EQ(nb.rank, k);

    const Vector proj = direction_projection(nb, Whitened(r0));
    const Vector kkt = direction_kkt(DenseMatrix::Identity(n, n), a0, Original(r0)).P;
    EXPECT_LE(RelErr(proj, kkt), 1e-9) << "trial " << trial;
    if (nb.nullity() > 0) {
      const SphereDirection sph = direction_sphere(nb, Whitened(r0));
      EXPECT_LE(RelErr(sph.P, proj), 1e-10) << "trial " << trial;
      const Vector& z = sph.sphere.Z;
      const Vector reduced = 2.0 * sph.sphere.C;
      EXPECT_NEAR(z.dot(z), -reduced.dot(z), 1e-10 * std::max(1.0, z.squaredNorm()));
    }
    if (proj.norm() > 1e-12) {
      const Vector reduced = nb.null_basis.transpose() * r0;
      EXPECT_LT(r0.dot(proj), 0.0);
      EXPECT_NEAR(r0.dot(proj), -reduced.squaredNorm(), 1e-10 * reduced.squaredNorm());
    }
    if (k > 0 && nb.nullity() > 0) {
      EXPECT_LE((a0 * proj).cwiseAbs().maxCoeff(), 1e-9 * nb.sigma_max() * proj.norm());
      EXPECT_LE((a0 * kkt).cwiseAbs().maxCoeff(), 1e-9 * nb.sigma_max() * kkt.norm());
    }
  }
}

TEST(DirectionProperties, SignFlipInvariance) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 15)(rng);
    const int k = std::uniform_int_distribution<int>(0, n - 1)(rng);
    const DenseMatrix a0 = random_matrix(rng, k, n);
    const Vector r0 = random_vector(rng, n);
    const auto nb = linalg::svd_null_basis(a0);
    auto flipped = nb;
    const auto col = std::uniform_int_distribution<Eigen::Index>(0, nb.nullity() - 1)(rng);
    flipped.null_basis.col(col) *= -1.0;
    const Vector p1 = direction_projection(nb, Whitened(r0));
    const Vector p2 = direction_projection(flipped, Whitened(r0));
    EXPECT_LE((p1 - p2).norm(), 1e-12 * std::max(1.0, p1.norm()));
    const Vector s1 = direction_sphere(nb, Whitened(r0)).P;
    const Vector s2 = direction_sphere(flipped, Whitened(r0)).P;
    EXPECT_LE((s1 - s2).norm(), 1e-12 * std::max(1.0, s1.norm()));
  }
}

TEST(DirectionProperties, WhiteningPipelineMatchesKktInOriginalSpace) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 20)(rng);
    const int m = std::uniform_int_distribution<int>(0, std::min(3, n - 1))(rng);
    const int r = std::uniform_int_distribution<int>(0, 4)(rng);
    const QpProblem p = testing::random_problem(rng, n, m, r);
    const WhitenedProblem w = whiten_problem(p);
    std::vector<Eigen::Index> rows;
    for (Eigen::Index i = 0; i < r && m + static_cast<Eigen::Index>(rows.size()) < n; ++i) {
      rows.push_back(i);
    }
    const WorkingSet ws(rows);
    const Vector x = random_vector(rng, n);

    const Vector kkt =
        direction_kkt(p.Q, stack_active(p, ws).a0, original_residual(p, x)).P;
    const auto nb = linalg::svd_null_basis(stack_rows(w.A_tilde, w.G_tilde, ws));
    const Vector proj = w.from_whitened(direction_projection(nb, w.residual_at(x)));
    EXPECT_LE(RelErr(proj, kkt), 1e-8) << "trial " << trial;
  }
}

}  // namespace
}  // namespace asqp
