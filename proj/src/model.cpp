#include "asqp/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "asqp/error.hpp"

namespace asqp {
namespace {

constexpr double kSymTol = 1e-10;

void check_dims(std::vector<Violation>& out, const std::string& field, Eigen::Index got,
                Eigen::Index want) {
  if (got != want) {
    out.push_back({ViolationKind::DimensionMismatch, field, 0.0, std::nullopt,
                   field + " has dimension " + std::to_string(got) + ", expected " +
                       std::to_string(want)});
  }
}

}  // namespace

std::vector<Violation> validate(const QpProblem& p, double feas_tol) {
  std::vector<Violation> out;
  const Eigen::Index n = p.Q.rows();

  check_dims(out, "Q.cols", p.Q.cols(), n);
  check_dims(out, "q", p.q.size(), n);
  if (p.A.rows() > 0) check_dims(out, "A.cols", p.A.cols(), n);
  check_dims(out, "b", p.b.size(), p.A.rows());
  if (p.G.rows() > 0) check_dims(out, "G.cols", p.G.cols(), n);
  check_dims(out, "h", p.h.size(), p.G.rows());
  if (p.x0) check_dims(out, "x0", p.x0->size(), n);
  if (!out.empty()) return out;

  auto finite = [&](const std::string& field, bool ok) {
    if (!ok) {
      out.push_back({ViolationKind::NonFinite, field, 0.0, std::nullopt,
                     field + " contains non-finite entries"});
    }
  };
  finite("Q", p.Q.allFinite());
  finite("q", p.q.allFinite());
  finite("A", p.A.allFinite());
  finite("b", p.b.allFinite());
  finite("G", p.G.allFinite());
  finite("h", p.h.allFinite());
  if (p.x0) finite("x0", p.x0->allFinite());
  if (!out.empty()) return out;

  if (n > 0) {
    const double asym = (p.Q - p.Q.transpose()).cwiseAbs().maxCoeff();
    if (asym > kSymTol * std::max(1.0, p.Q.cwiseAbs().maxCoeff())) {
      out.push_back({ViolationKind::SymmetryViolation, "Q", asym, std::nullopt,
                     "Q is not symmetric"});
    }
  }

  if (p.x0) {
    const Vector& x = *p.x0;
    for (Eigen::Index i = 0; i < p.m(); ++i) {
      const double res = std::abs(p.A.row(i).dot(x) - p.b(i));
      if (res > feas_tol) {
        out.push_back({ViolationKind::InfeasibleStart, "b", res, i,
                       "equality row " + std::to_string(i) + " violated at x0"});
      }
    }
    for (Eigen::Index i = 0; i < p.r(); ++i) {
      const double res = p.G.row(i).dot(x) - p.h(i);
      if (res > feas_tol) {
        out.push_back({ViolationKind::InfeasibleStart, "h", res, i,
                       "inequality row " + std::to_string(i) + " violated at x0"});
      }
    }
  }
  return out;
}

bool WorkingSet::contains(Eigen::Index row) const { return position(row).has_value(); }

std::optional<std::size_t> WorkingSet::position(Eigen::Index row) const {
  auto it = std::find(rows_.begin(), rows_.end(), row);
  if (it == rows_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - rows_.begin());
}

void WorkingSet::add(Eigen::Index row) {
  if (contains(row)) {
    throw Error(ErrorCode::InvalidInput, "row " + std::to_string(row) + " already active");
  }
  rows_.push_back(row);
}

void WorkingSet::remove(Eigen::Index row) {
  auto pos = position(row);
  if (!pos) {
    throw Error(ErrorCode::InvalidInput, "row " + std::to_string(row) + " is not active");
  }
  rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(*pos));
}

DenseMatrix stack_rows(const DenseMatrix& a, const DenseMatrix& g, const WorkingSet& ws) {
  const Eigen::Index n = a.rows() > 0 ? a.cols() : g.cols();
  const Eigen::Index m = a.rows();
  DenseMatrix out(m + static_cast<Eigen::Index>(ws.size()), n);
  if (m > 0) out.topRows(m) = a;
  Eigen::Index row = m;
  for (Eigen::Index i : ws.active()) out.row(row++) = g.row(i);
  return out;
}

ActiveSystem stack_active(const QpProblem& p, const WorkingSet& ws) {
  const Eigen::Index n = p.n();
  const Eigen::Index m = p.m();
  const auto rows = m + static_cast<Eigen::Index>(ws.size());
  ActiveSystem out{DenseMatrix(rows, n), Vector(rows)};
  if (m > 0) {
    out.a0.topRows(m) = p.A;
    out.rhs0.head(m) = p.b;
  }
  Eigen::Index row = m;
  for (Eigen::Index i : ws.active()) {
    out.a0.row(row) = p.G.row(i);
    out.rhs0(row) = p.h(i);
    ++row;
  }
  return out;
}

WorkingSet initial_working_set(const QpProblem& p, const Vector& x0, double tol,
                               double rank_tol) {
  const FeasibilityMargin margin = feasibility_margin(p, x0);
  if (margin.worst() > tol) {
    throw Error(ErrorCode::InfeasibleStart,
                "starting point violates constraints (equality " +
                    std::to_string(margin.equality) + ", inequality " +
                    std::to_string(margin.inequality) + ")");
  }

  struct Candidate {
    double residual;
    Eigen::Index row;
  };
  std::vector<Candidate> candidates;
  for (Eigen::Index i = 0; i < p.r(); ++i) {
    const double res = std::abs(p.G.row(i).dot(x0) - p.h(i));
    if (res <= tol) candidates.push_back({res, i});
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.residual != b.residual) return a.residual < b.residual;
    return a.row < b.row;
  });

  WorkingSet ws;
  for (const Candidate& c : candidates) {
    if (p.m() + static_cast<Eigen::Index>(ws.size()) >= p.n()) break;
    WorkingSet trial = ws;
    trial.add(c.row);
    const DenseMatrix a0 = stack_rows(p.A, p.G, trial);
    if (linalg::numerical_rank(a0, rank_tol) == a0.rows()) ws = std::move(trial);
  }
  return ws;
}

FeasibilityMargin feasibility_margin(const QpProblem& p, const Vector& x) {
  FeasibilityMargin out;
  if (p.m() > 0) out.equality = (p.A * x - p.b).cwiseAbs().maxCoeff();
  if (p.r() > 0) out.inequality = std::max(0.0, (p.G * x - p.h).maxCoeff());
  return out;
}

Vector resolve_start(const QpProblem& p) {
  if (p.x0) return *p.x0;
  if (p.m() == 0 && (p.r() == 0 || p.h.minCoeff() >= 0.0)) return Vector::Zero(p.n());
  throw Error(ErrorCode::MissingStart,
              "no feasible starting point supplied; provide x0 (the origin is only used when "
              "there are no equalities and h >= 0)");
}

Residual original_residual(const QpProblem& p, const Vector& x) {
  return {p.Q * x + p.q, Space::Original};
}

}  // namespace asqp
