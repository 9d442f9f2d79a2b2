#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "asqp/generator.hpp"
#include "asqp/solver.hpp"

namespace asqp::bench {

struct SolverEntry {
  std::string name;
  SolverConfig config;
};

/// One entry per scheme, named after it, with default tolerances.
std::vector<SolverEntry> entries_for(const std::vector<Scheme>& schemes);

struct RunRecord {
  int problem_id = 0;
  Eigen::Index n = 0;
  Eigen::Index n_e = 0;
  Eigen::Index n_i = 0;
  std::string solver;
  SolveStatus status = SolveStatus::Error;
  int iterations = 0;
  double wall_time_s = 0.0;
  /// ||x_solver - x_oracle||, present only when the solve was Optimal and an
  /// oracle reference exists.
  std::optional<double> error_norm;
  /// Final iterate; not serialised.
  Vector x_star;
};

struct SuiteOptions {
  bool with_oracle = true;
  /// Worker threads; unset reads ASQP_THREADS (default 1).
  std::optional<int> threads;
  /// Replacement draws allowed per instance when the oracle is inconclusive.
  int max_regenerations = 5;
};

/// Worker count from ASQP_THREADS, at least 1.
int threads_from_env();

/// Generates every instance of `spec`, solves it with each entry and records
/// the outcome in (problem, solver) order. Only the solve() call is timed.
/// Individual failures are recorded, never thrown.
std::vector<RunRecord> run_suite(const GeneratorSpec& spec, const std::vector<SolverEntry>& solvers,
                                 const SuiteOptions& options = {});

/// Same, over an explicit list of problems (ids are list positions).
std::vector<RunRecord> run_problems(const std::vector<QpProblem>& problems,
                                    const std::vector<SolverEntry>& solvers,
                                    const SuiteOptions& options = {});

/// Column order: problem_id,n,n_e,n_i,solver,status,iterations,wall_time_s,error_norm
void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records);
void write_records_csv(const std::filesystem::path& path, const std::vector<RunRecord>& records);
/// Throws Error(MalformedCsv) naming the line and column at fault.
std::vector<RunRecord> read_records_csv(std::istream& in);
std::vector<RunRecord> read_records_csv(const std::filesystem::path& path);

std::optional<SolveStatus> parse_status(std::string_view text);

}  // namespace asqp::bench
