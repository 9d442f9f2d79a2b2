#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "asqp/model.hpp"

namespace asqp {

/// How the equality-constrained subproblem is solved at each iteration.
///   Kkt        - dense factorisation of the full KKT matrix (baseline).
///   Projection - null-space projection of the whitened residual.
///   Sphere     - reduced coordinates on the sphere ||Z + C|| = ||C||.
///   Auto       - Sphere when the null space has dimension <= auto_threshold,
///                Projection otherwise.
enum class Scheme { Kkt, Projection, Sphere, Auto };

std::string_view to_string(Scheme scheme);
/// Accepts "kkt", "projection", "sphere", "auto".
std::optional<Scheme> parse_scheme(std::string_view name);

struct SolverConfig {
  Scheme scheme = Scheme::Auto;
  double feas_tol = kDefaultFeasTol;
  /// P counts as zero when ||P|| <= direction_tol * max(1, ||r0||).
  double direction_tol = 1e-9;
  double multiplier_tol = 1e-8;
  double rank_tol = linalg::kDefaultRankTol;
  /// Defaults to 10 (n + r) when unset.
  std::optional<int> max_iterations;
  /// Largest null-space dimension for which Auto picks the sphere scheme.
  Eigen::Index auto_threshold = 2;
  /// Consecutive zero-length steps tolerated before reporting cycling.
  /// Defaults to 2 (r + n) when unset.
  std::optional<int> zero_step_limit;

  /// Throws Error(InvalidInput) when a tolerance or limit is out of range.
  void check() const;
};

enum class SolveStatus { Optimal, IterationLimit, InfeasibleStart, Error };

std::string_view to_string(SolveStatus status);

enum class StepAction { FullStep, AddedConstraint, RemovedConstraint, Terminated };

std::string_view to_string(StepAction action);

struct IterationTrace {
  int iteration = 0;
  Vector x;  // iterate after the action
  double direction_norm = 0.0;
  double alpha = 0.0;
  StepAction action = StepAction::FullStep;
  std::optional<Eigen::Index> row;  // constraint added or removed
  double objective = 0.0;
  Scheme scheme = Scheme::Kkt;  // concrete scheme that produced the direction
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::Error;
  Vector x_star;
  double objective = 0.0;
  /// Multipliers of the final working matrix: equalities first, then the
  /// inequality rows listed in active_rows, in that order.
  Vector lambda_star;
  std::vector<Eigen::Index> active_rows;
  std::vector<IterationTrace> trace;
  int iterations = 0;
  std::string message;
};

/// Runs the primal active-set method from the problem's starting point.
/// Failures are reported through SolveOutcome::status; the function itself
/// only throws for an invalid configuration.
SolveOutcome solve(const QpProblem& problem, const SolverConfig& config = {});

struct StepLength {
  double alpha = 1.0;
  std::optional<Eigen::Index> blocking;
};

/// Largest step in [0, 1] along P keeping every inequality outside the
/// working set satisfied. Rows in `excluded` are skipped. The blocking row is
/// reported when the minimum ratio is below 1 + feas_tol; ties go to the
/// smallest index.
StepLength step_length(const QpProblem& problem, const WorkingSet& ws, const Vector& x,
                       const Vector& P, double feas_tol = kDefaultFeasTol,
                       const std::vector<Eigen::Index>& excluded = {});

/// Resolves Auto to a concrete scheme for the given working-matrix size.
Scheme choose_scheme(Eigen::Index n, Eigen::Index working_rows, const SolverConfig& config);

}  // namespace asqp
