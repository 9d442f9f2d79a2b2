#include "asqp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "asqp/directions.hpp"
#include "asqp/error.hpp"

namespace asqp {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::Kkt: return "kkt";
    case Scheme::Projection: return "projection";
    case Scheme::Sphere: return "sphere";
    case Scheme::Auto: return "auto";
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (Scheme s : {Scheme::Kkt, Scheme::Projection, Scheme::Sphere, Scheme::Auto}) {
    if (name == to_string(s)) return s;
  }
  return std::nullopt;
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::IterationLimit: return "IterationLimit";
    case SolveStatus::InfeasibleStart: return "InfeasibleStart";
    case SolveStatus::Error: return "Error";
  }
  return "Unknown";
}

std::string_view to_string(StepAction action) {
  switch (action) {
    case StepAction::FullStep: return "FullStep";
    case StepAction::AddedConstraint: return "AddedConstraint";
    case StepAction::RemovedConstraint: return "RemovedConstraint";
    case StepAction::Terminated: return "Terminated";
  }
  return "Unknown";
}

void SolverConfig::check() const {
  if (!(feas_tol > 0) || !(direction_tol > 0) || !(multiplier_tol > 0) || !(rank_tol > 0)) {
    throw Error(ErrorCode::InvalidInput, "solver tolerances must be positive");
  }
  if (max_iterations && *max_iterations < 1) {
    throw Error(ErrorCode::InvalidInput, "max_iterations must be at least 1");
  }
  if (zero_step_limit && *zero_step_limit < 1) {
    throw Error(ErrorCode::InvalidInput, "zero_step_limit must be at least 1");
  }
}

Scheme choose_scheme(Eigen::Index n, Eigen::Index working_rows, const SolverConfig& config) {
  if (config.scheme != Scheme::Auto) return config.scheme;
  return n - working_rows <= config.auto_threshold ? Scheme::Sphere : Scheme::Projection;
}

StepLength step_length(const QpProblem& p, const WorkingSet& ws, const Vector& x,
                       const Vector& P, double feas_tol,
                       const std::vector<Eigen::Index>& excluded) {
  StepLength out;
  const double p_norm = P.norm();
  if (p_norm == 0.0) return out;

  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < p.r(); ++i) {
    if (ws.contains(i)) continue;
    if (std::find(excluded.begin(), excluded.end(), i) != excluded.end()) continue;
    const double gp = p.G.row(i).dot(P);
    if (gp <= 1e-12 * p.G.row(i).norm() * p_norm) continue;
    const double slack = std::max(0.0, p.h(i) - p.G.row(i).dot(x));
    const double ratio = slack / gp;
    if (ratio < best) {  // strict: ties keep the smaller index
      best = ratio;
      out.blocking = i;
    }
  }
  if (!out.blocking || best >= 1.0 + feas_tol) {
    out.blocking.reset();
    out.alpha = 1.0;
  } else {
    out.alpha = std::min(1.0, best);
  }
  return out;
}

namespace {

struct DirectionResult {
  Vector P;  // original space
  double norm = 0.0;
  double threshold = 0.0;
  Vector lambda;  // filled only at a stationary point
  Scheme scheme = Scheme::Kkt;
};

class ActiveSetSolver {
 public:
  ActiveSetSolver(const QpProblem& problem, const SolverConfig& config)
      : p_(problem), cfg_(config) {}

  SolveOutcome run();

 private:
  DirectionResult direction(const Vector& x, bool& stationary);
  SolveOutcome finish(SolveStatus status, std::string message);
  void record(StepAction action, double alpha, double dir_norm,
              std::optional<Eigen::Index> row, Scheme scheme);

  const QpProblem& p_;
  const SolverConfig& cfg_;
  std::optional<WhitenedProblem> white_;
  WorkingSet ws_;
  Vector x_;
  Vector lambda_;
  std::vector<IterationTrace> trace_;
  int iterations_ = 0;
};

SolveOutcome ActiveSetSolver::finish(SolveStatus status, std::string message) {
  SolveOutcome out;
  out.status = status;
  out.message = std::move(message);
  out.x_star = x_;
  out.objective = x_.size() == p_.n() ? p_.objective(x_) : 0.0;
  out.lambda_star = lambda_;
  out.active_rows = ws_.active();
  out.trace = std::move(trace_);
  out.iterations = iterations_;
  return out;
}

void ActiveSetSolver::record(StepAction action, double alpha, double dir_norm,
                             std::optional<Eigen::Index> row, Scheme scheme) {
  IterationTrace t;
  t.iteration = iterations_;
  t.x = x_;
  t.direction_norm = dir_norm;
  t.alpha = alpha;
  t.action = action;
  t.row = row;
  t.objective = p_.objective(x_);
  t.scheme = scheme;
  trace_.push_back(std::move(t));
}

DirectionResult ActiveSetSolver::direction(const Vector& x, bool& stationary) {
  DirectionResult out;
  const auto rows = p_.m() + static_cast<Eigen::Index>(ws_.size());
  out.scheme = choose_scheme(p_.n(), rows, cfg_);

  if (out.scheme == Scheme::Kkt) {
    const ActiveSystem sys = stack_active(p_, ws_);
    const Residual r0 = original_residual(p_, x);
    KktDirection d = direction_kkt(p_.Q, sys.a0, r0);
    out.P = std::move(d.P);
    out.norm = out.P.norm();
    out.threshold = cfg_.direction_tol * std::max(1.0, r0.r0.norm());
    stationary = out.norm <= out.threshold;
    if (stationary) out.lambda = std::move(d.lambda);
    return out;
  }

  const DenseMatrix a0 = stack_rows(white_->A_tilde, white_->G_tilde, ws_);
  const linalg::NullBasis basis = linalg::svd_null_basis(a0, cfg_.rank_tol);
  if (basis.rank != a0.rows()) {
    throw Error(ErrorCode::RankDeficientWorkingSet,
                "working matrix has rank " + std::to_string(basis.rank) + " with " +
                    std::to_string(a0.rows()) + " rows");
  }
  const Residual r0 = white_->residual_at(x);

  Vector p_tilde;
  if (out.scheme == Scheme::Sphere) {
    p_tilde = basis.nullity() == 0 ? Vector(Vector::Zero(p_.n()))
                                   : direction_sphere(basis, r0).P;
  } else {
    p_tilde = direction_projection(basis, r0);
  }
  out.norm = p_tilde.norm();
  out.threshold = cfg_.direction_tol * std::max(1.0, r0.r0.norm());
  stationary = out.norm <= out.threshold;
  if (stationary) {
    out.lambda = basis.rank > 0 ? multipliers_at_stationary(basis, r0) : Vector(0);
    out.P = Vector::Zero(p_.n());
  } else {
    out.P = white_->from_whitened(p_tilde);
  }
  return out;
}

SolveOutcome ActiveSetSolver::run() {
  for (const Violation& v : validate(p_, cfg_.feas_tol)) {
    if (v.kind == ViolationKind::InfeasibleStart) {
      x_ = *p_.x0;
      return finish(SolveStatus::InfeasibleStart, v.message);
    }
    return finish(SolveStatus::Error, v.message);
  }

  try {
    x_ = resolve_start(p_);
    if (p_.m() > 0 && linalg::numerical_rank(p_.A, cfg_.rank_tol) < p_.m()) {
      return finish(SolveStatus::Error, "equality constraints are linearly dependent");
    }
    ws_ = initial_working_set(p_, x_, cfg_.feas_tol, cfg_.rank_tol);
    if (cfg_.scheme != Scheme::Kkt) white_ = whiten_problem(p_);
  } catch (const asqp::Error& e) {
    if (e.code() == ErrorCode::InfeasibleStart) {
      return finish(SolveStatus::InfeasibleStart, e.what());
    }
    return finish(SolveStatus::Error, e.what());
  }

  const int max_iter = cfg_.max_iterations.value_or(static_cast<int>(10 * (p_.n() + p_.r())));
  const int zero_limit = cfg_.zero_step_limit.value_or(static_cast<int>(2 * (p_.r() + p_.n())));
  std::optional<Eigen::Index> last_removed;
  int zero_steps = 0;

  try {
    while (iterations_ < max_iter) {
      ++iterations_;
      bool stationary = false;
      DirectionResult dir = direction(x_, stationary);

      if (stationary) {
        lambda_ = dir.lambda;
        std::optional<Eigen::Index> drop;
        double most_negative = -cfg_.multiplier_tol;
        for (std::size_t j = 0; j < ws_.size(); ++j) {
          const double lam = lambda_(p_.m() + static_cast<Eigen::Index>(j));
          const Eigen::Index row = ws_.active()[j];
          if (lam < most_negative || (drop && lam == most_negative && row < *drop)) {
            most_negative = lam;
            drop = row;
          }
        }
        if (!drop) {
          record(StepAction::Terminated, 0.0, dir.norm, std::nullopt, dir.scheme);
          return finish(SolveStatus::Optimal, "");
        }
        ws_.remove(*drop);
        last_removed = drop;
        record(StepAction::RemovedConstraint, 0.0, dir.norm, drop, dir.scheme);
        continue;
      }

      std::vector<Eigen::Index> excluded;
      StepLength step;
      for (;;) {
        step = step_length(p_, ws_, x_, dir.P, cfg_.feas_tol, excluded);
        if (!step.blocking) break;
        WorkingSet trial = ws_;
        trial.add(*step.blocking);
        const DenseMatrix a0 = stack_rows(p_.A, p_.G, trial);
        if (linalg::numerical_rank(a0, cfg_.rank_tol) == a0.rows()) break;
        excluded.push_back(*step.blocking);
      }

      if (step.blocking && step.alpha == 0.0 && last_removed == step.blocking) {
        return finish(SolveStatus::Error, "cycling: row " + std::to_string(*step.blocking) +
                                              " re-added immediately after removal");
      }
      last_removed.reset();

      x_ += step.alpha * dir.P;
      zero_steps = step.alpha == 0.0 ? zero_steps + 1 : 0;
      if (step.blocking) {
        ws_.add(*step.blocking);
        record(StepAction::AddedConstraint, step.alpha, dir.norm, step.blocking, dir.scheme);
      } else {
        record(StepAction::FullStep, step.alpha, dir.norm, std::nullopt, dir.scheme);
      }
      if (zero_steps > zero_limit) {
        return finish(SolveStatus::Error, "cycling: too many consecutive zero-length steps");
      }
    }
  } catch (const asqp::Error& e) {
    return finish(SolveStatus::Error, e.what());
  }
  return finish(SolveStatus::IterationLimit,
                "no optimality certificate after " + std::to_string(max_iter) + " iterations");
}

}  // namespace

SolveOutcome solve(const QpProblem& problem, const SolverConfig& config) {
  config.check();
  ActiveSetSolver solver(problem, config);
  return solver.run();
}

}  // namespace asqp
