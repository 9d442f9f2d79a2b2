#include "asqp/suite.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <thread>

#include "asqp/error.hpp"
#include "asqp/oracle.hpp"

namespace asqp::bench {
namespace {

struct Prepared {
  QpProblem problem;
  std::optional<Vector> reference;
};

void run_parallel(std::size_t jobs, int threads, const std::function<void(std::size_t)>& work) {
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || jobs <= 1) {
    for (std::size_t j = 0; j < jobs; ++j) work(j);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, jobs); ++w) {
    pool.emplace_back([&] {
      for (std::size_t j = next++; j < jobs; j = next++) work(j);
    });
  }
  for (auto& t : pool) t.join();
}

std::optional<Vector> try_oracle(const QpProblem& p) {
  try {
    return oracle_solve(p).x;
  } catch (const asqp::Error&) {
    return std::nullopt;
  }
}

std::vector<RunRecord> solve_cells(const std::vector<Prepared>& prepared,
                                   const std::vector<SolverEntry>& solvers, int threads) {
  const std::size_t cells = prepared.size() * solvers.size();
  std::vector<RunRecord> records(cells);
  run_parallel(cells, threads, [&](std::size_t cell) {
    const std::size_t pi = cell / solvers.size();
    const SolverEntry& entry = solvers[cell % solvers.size()];
    const QpProblem& p = prepared[pi].problem;

    RunRecord& rec = records[cell];
    rec.problem_id = static_cast<int>(pi);
    rec.n = p.n();
    rec.n_e = p.m();
    rec.n_i = p.r();
    rec.solver = entry.name;

    const auto start = std::chrono::steady_clock::now();
    SolveOutcome out = solve(p, entry.config);
    const auto stop = std::chrono::steady_clock::now();

    rec.wall_time_s = std::chrono::duration<double>(stop - start).count();
    rec.status = out.status;
    rec.iterations = out.iterations;
    rec.x_star = std::move(out.x_star);
    if (rec.status == SolveStatus::Optimal && prepared[pi].reference) {
      rec.error_norm = (rec.x_star - *prepared[pi].reference).norm();
    }
  });
  return records;
}

}  // namespace

std::vector<SolverEntry> entries_for(const std::vector<Scheme>& schemes) {
  std::vector<SolverEntry> out;
  for (Scheme s : schemes) {
    SolverConfig cfg;
    cfg.scheme = s;
    out.push_back({std::string(to_string(s)), cfg});
  }
  return out;
}

int threads_from_env() {
  const char* env = std::getenv("ASQP_THREADS");
  if (env == nullptr) return 1;
  const int value = std::atoi(env);
  return value >= 1 ? value : 1;
}

std::vector<RunRecord> run_suite(const GeneratorSpec& spec, const std::vector<SolverEntry>& solvers,
                                 const SuiteOptions& options) {
  if (solvers.empty()) throw Error(ErrorCode::InvalidInput, "no solvers configured");
  const Generator gen(spec);
  const int threads = options.threads.value_or(threads_from_env());

  std::vector<Prepared> prepared(static_cast<std::size_t>(spec.count));
  run_parallel(prepared.size(), threads, [&](std::size_t i) {
    Prepared& slot = prepared[i];
    slot.problem = gen.instance(static_cast<int>(i));
    if (!options.with_oracle) return;
    slot.reference = try_oracle(slot.problem);
    // Replacement draws come from stream indices past the end of the suite,
    // one disjoint block per slot, so the result does not depend on scheduling.
    for (int k = 0; !slot.reference && k < options.max_regenerations; ++k) {
      const int index = spec.count + static_cast<int>(i) * options.max_regenerations + k;
      slot.problem = gen.instance(index);
      slot.reference = try_oracle(slot.problem);
    }
  });
  return solve_cells(prepared, solvers, threads);
}

std::vector<RunRecord> run_problems(const std::vector<QpProblem>& problems,
                                    const std::vector<SolverEntry>& solvers,
                                    const SuiteOptions& options) {
  if (solvers.empty()) throw Error(ErrorCode::InvalidInput, "no solvers configured");
  const int threads = options.threads.value_or(threads_from_env());
  std::vector<Prepared> prepared(problems.size());
  run_parallel(prepared.size(), threads, [&](std::size_t i) {
    prepared[i].problem = problems[i];
    if (options.with_oracle) prepared[i].reference = try_oracle(problems[i]);
  });
  return solve_cells(prepared, solvers, threads);
}

std::optional<SolveStatus> parse_status(std::string_view text) {
  for (SolveStatus s : {SolveStatus::Optimal, SolveStatus::IterationLimit,
                        SolveStatus::InfeasibleStart, SolveStatus::Error}) {
    if (text == to_string(s)) return s;
  }
  return std::nullopt;
}

}  // namespace asqp::bench
