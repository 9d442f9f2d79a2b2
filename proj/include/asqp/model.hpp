#pragma once

#include <optional>
#include <string>
#include <vector>

#include "asqp/linalg.hpp"

namespace asqp {

/// Absolute activity / feasibility tolerance used when none is supplied.
inline constexpr double kDefaultFeasTol = 1e-8;

/// min 1/2 x^T Q x + q^T x  s.t.  A x = b,  G x <= h.
struct QpProblem {
  DenseMatrix Q;
  Vector q;
  DenseMatrix A;  // m x n, m may be 0
  Vector b;
  DenseMatrix G;  // r x n, r may be 0
  Vector h;
  std::optional<Vector> x0;

  Eigen::Index n() const { return Q.rows(); }
  Eigen::Index m() const { return A.rows(); }
  Eigen::Index r() const { return G.rows(); }

  double objective(const Vector& x) const { return 0.5 * x.dot(Q * x) + q.dot(x); }
};

enum class ViolationKind {
  DimensionMismatch,
  NonFinite,
  SymmetryViolation,
  InfeasibleStart,
};

struct Violation {
  ViolationKind kind;
  std::string field;
  double residual = 0.0;
  std::optional<Eigen::Index> row;  // offending row for InfeasibleStart
  std::string message;
};

/// Checks the structural invariants of a problem. Never throws; an empty
/// result means the problem is well formed (positive definiteness is
/// verified later, when Q is factored).
std::vector<Violation> validate(const QpProblem& problem, double feas_tol = kDefaultFeasTol);

/// Ordered set of inequality rows currently held at equality. The equality
/// rows of A are always implicitly part of the working matrix.
class WorkingSet {
 public:
  WorkingSet() = default;
  explicit WorkingSet(std::vector<Eigen::Index> rows) : rows_(std::move(rows)) {}

  const std::vector<Eigen::Index>& active() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  bool contains(Eigen::Index row) const;
  /// Position of the row inside the working set, if present.
  std::optional<std::size_t> position(Eigen::Index row) const;

  void add(Eigen::Index row);
  void remove(Eigen::Index row);

  bool operator==(const WorkingSet&) const = default;

 private:
  std::vector<Eigen::Index> rows_;
};

/// Stacked working matrix A0 = [A; G(I)] and right-hand side [b; h(I)].
struct ActiveSystem {
  DenseMatrix a0;
  Vector rhs0;
};

ActiveSystem stack_active(const QpProblem& problem, const WorkingSet& ws);

/// Rows of `g` selected by the working set, stacked under `a`. Used for the
/// whitened constraint matrices as well as the original ones.
DenseMatrix stack_rows(const DenseMatrix& a, const DenseMatrix& g, const WorkingSet& ws);

/// Inequality rows active at x0 (|G_i x0 - h_i| <= tol), ordered by ascending
/// residual then ascending index, truncated to a maximal set for which the
/// stacked matrix keeps full row rank and at most n rows.
/// Throws Error(InfeasibleStart) if x0 violates a constraint by more than tol.
WorkingSet initial_working_set(const QpProblem& problem, const Vector& x0,
                               double tol = kDefaultFeasTol,
                               double rank_tol = linalg::kDefaultRankTol);

struct FeasibilityMargin {
  double equality = 0.0;    // ||A x - b||_inf
  double inequality = 0.0;  // max(0, max_i (G_i x - h_i))

  double worst() const { return std::max(equality, inequality); }
};

FeasibilityMargin feasibility_margin(const QpProblem& problem, const Vector& x);

/// Resolves the starting point: the supplied x0, or the origin when there are
/// no equalities and h >= 0. Throws Error(MissingStart) otherwise.
Vector resolve_start(const QpProblem& problem);

enum class Space { Original, Whitened };

/// Objective gradient at an iterate, tagged with the space it lives in:
/// Q x + q in the original space, x~ + q~ after whitening.
struct Residual {
  Vector r0;
  Space space = Space::Original;
};

Residual original_residual(const QpProblem& problem, const Vector& x);

}  // namespace asqp
