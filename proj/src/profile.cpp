#include "asqp/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>

#include "asqp/error.hpp"

namespace asqp::bench {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

ProfileTable::ProfileTable(std::vector<std::string> solvers, std::vector<int> problems,
                           DenseMatrix times)
    : solvers_(std::move(solvers)), problems_(std::move(problems)), times_(std::move(times)) {
  const auto np = static_cast<Eigen::Index>(problems_.size());
  const auto ns = static_cast<Eigen::Index>(solvers_.size());
  if (np == 0 || ns == 0) throw Error(ErrorCode::InvalidInput, "profile table is empty");
  if (times_.rows() != np || times_.cols() != ns) {
    throw Error(ErrorCode::InvalidInput, "profile times do not match problems x solvers");
  }
  ratios_ = DenseMatrix::Constant(np, ns, kInf);
  for (Eigen::Index p = 0; p < np; ++p) {
    double best = kInf;
    for (Eigen::Index s = 0; s < ns; ++s) {
      const double t = times_(p, s);
      if (std::isfinite(t) && t < 0.0) {
        throw Error(ErrorCode::InvalidInput, "negative solve time");
      }
      if (std::isfinite(t)) best = std::min(best, t);
    }
    if (!std::isfinite(best)) {
      ++unsolved_;
      continue;
    }
    for (Eigen::Index s = 0; s < ns; ++s) {
      const double t = times_(p, s);
      if (!std::isfinite(t)) continue;
      // A zero best time makes every solved entry tie at ratio 1.
      ratios_(p, s) = best > 0.0 ? t / best : (t > 0.0 ? kInf : 1.0);
    }
  }
}

ProfileTable ProfileTable::from_records(const std::vector<RunRecord>& records) {
  std::vector<std::string> solvers;
  std::vector<int> problems;
  std::map<std::string, Eigen::Index> solver_col;
  std::map<int, Eigen::Index> problem_row;
  for (const RunRecord& r : records) {
    if (solver_col.emplace(r.solver, static_cast<Eigen::Index>(solvers.size())).second) {
      solvers.push_back(r.solver);
    }
    if (problem_row.emplace(r.problem_id, static_cast<Eigen::Index>(problems.size())).second) {
      problems.push_back(r.problem_id);
    }
  }
  DenseMatrix times = DenseMatrix::Constant(static_cast<Eigen::Index>(problems.size()),
                                            static_cast<Eigen::Index>(solvers.size()), kInf);
  for (const RunRecord& r : records) {
    if (r.status != SolveStatus::Optimal) continue;
    times(problem_row[r.problem_id], solver_col[r.solver]) = r.wall_time_s;
  }
  return ProfileTable(std::move(solvers), std::move(problems), std::move(times));
}

std::vector<double> ProfileTable::breakpoints() const {
  std::vector<double> out{1.0};
  for (Eigen::Index i = 0; i < ratios_.size(); ++i) {
    const double v = ratios_.data()[i];
    if (std::isfinite(v)) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Profile dolan_more(const ProfileTable& table, const std::vector<double>& tau_grid) {
  if (tau_grid.empty() || tau_grid.front() != 1.0) {
    throw Error(ErrorCode::InvalidInput, "tau grid must start at 1");
  }
  for (std::size_t i = 1; i < tau_grid.size(); ++i) {
    if (!(tau_grid[i] > tau_grid[i - 1])) {
      throw Error(ErrorCode::InvalidInput, "tau grid must be strictly increasing");
    }
  }
  const DenseMatrix& ratios = table.ratios();
  const double np = static_cast<double>(ratios.rows());

  Profile out;
  out.unsolved_problems = table.unsolved_problems();
  for (Eigen::Index s = 0; s < ratios.cols(); ++s) {
    ProfileCurve curve{table.solvers()[static_cast<std::size_t>(s)], {}};
    for (double tau : tau_grid) {
      const auto hits = (ratios.col(s).array() <= tau).count();
      curve.points.push_back({tau, static_cast<double>(hits) / np});
    }
    out.curves.push_back(std::move(curve));
  }
  return out;
}

void write_profile_csv(std::ostream& out, const Profile& profile) {
  out << "solver,tau,rho\n";
  char buf[64];
  for (const ProfileCurve& c : profile.curves) {
    for (const ProfilePoint& pt : c.points) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g", pt.tau, pt.rho);
      out << c.solver << ',' << buf << '\n';
    }
  }
}

}  // namespace asqp::bench
