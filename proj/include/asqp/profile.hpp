#pragma once

#include <string>
#include <vector>

#include "asqp/suite.hpp"

namespace asqp::bench {

/// Solver x problem timings. A failed run is stored as +infinity and is
/// never the best time on a problem.
class ProfileTable {
 public:
  ProfileTable(std::vector<std::string> solvers, std::vector<int> problems,
               DenseMatrix times);

  /// Problems in order of first appearance, solvers likewise. Only Optimal
  /// records count as solved; a missing cell is a failure.
  static ProfileTable from_records(const std::vector<RunRecord>& records);

  const std::vector<std::string>& solvers() const { return solvers_; }
  const std::vector<int>& problems() const { return problems_; }
  /// problems x solvers
  const DenseMatrix& times() const { return times_; }
  /// t_{p,s} / min_s t_{p,s}; +infinity for failures and for problems no
  /// solver finished.
  const DenseMatrix& ratios() const { return ratios_; }
  /// Problems on which every solver failed.
  int unsolved_problems() const { return unsolved_; }

  /// Sorted distinct finite ratios, always starting at 1.
  std::vector<double> breakpoints() const;

 private:
  std::vector<std::string> solvers_;
  std::vector<int> problems_;
  DenseMatrix times_;
  DenseMatrix ratios_;
  int unsolved_ = 0;
};

struct ProfilePoint {
  double tau;
  double rho;
};

struct ProfileCurve {
  std::string solver;
  std::vector<ProfilePoint> points;
};

struct Profile {
  std::vector<ProfileCurve> curves;
  /// Problems excluded from the ratio minimum because every solver failed.
  int unsolved_problems = 0;
};

/// rho_s(tau) = |{p : r_{p,s} <= tau}| / |problems| on the given grid.
/// The grid must start at 1 and be strictly increasing.
Profile dolan_more(const ProfileTable& table, const std::vector<double>& tau_grid);

/// Rows "solver,tau,rho".
void write_profile_csv(std::ostream& out, const Profile& profile);

}  // namespace asqp::bench
