#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "asqp/error.hpp"
#include "asqp/generator.hpp"
#include "asqp/problem_io.hpp"
#include "asqp/profile.hpp"
#include "asqp/solver.hpp"
#include "asqp/suite.hpp"

namespace asqp::cli {
namespace {

struct GenFlags {
  Eigen::Index n_min = 10;
  Eigen::Index n_max = 100;
  std::string ne = "1";
  std::string ni = "10";
  int count = 10;
  std::string seed = "0";
  std::string spec_file;
};

void add_generator_flags(CLI::App* cmd, GenFlags& g) {
  cmd->add_option("--n-min", g.n_min, "Smallest variable count")->check(CLI::PositiveNumber);
  cmd->add_option("--n-max", g.n_max, "Largest variable count")->check(CLI::PositiveNumber);
  cmd->add_option("--ne", g.ne, "Equality count: integer, n-1 or n/2");
  cmd->add_option("--ni", g.ni, "Inequality count: integer or n/2");
  cmd->add_option("--count", g.count, "Number of instances")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", g.seed, "Seed, decimal or 0x-hex");
}

// A spec file is a JSON object with any of n_min, n_max, ne, ni, count, seed;
// present fields override the flags.
bench::GeneratorSpec to_spec(GenFlags g) {
  if (!g.spec_file.empty()) {
    std::ifstream in(g.spec_file);
    if (!in) throw Error(ErrorCode::InvalidGeneratorSpec, "cannot open " + g.spec_file);
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::InvalidGeneratorSpec, std::string("spec file: ") + e.what());
    }
    auto text = [](const nlohmann::json& v) {
      return v.is_string() ? v.get<std::string>() : v.dump();
    };
    try {
      if (doc.contains("n_min")) g.n_min = doc["n_min"].get<Eigen::Index>();
      if (doc.contains("n_max")) g.n_max = doc["n_max"].get<Eigen::Index>();
      if (doc.contains("ne")) g.ne = text(doc["ne"]);
      if (doc.contains("ni")) g.ni = text(doc["ni"]);
      if (doc.contains("count")) g.count = doc["count"].get<int>();
      if (doc.contains("seed")) g.seed = text(doc["seed"]);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::InvalidGeneratorSpec, std::string("spec file: ") + e.what());
    }
  }
  bench::GeneratorSpec spec;
  spec.n_min = g.n_min;
  spec.n_max = g.n_max;
  spec.n_e = bench::CountRule::parse(g.ne);
  spec.n_i = bench::CountRule::parse(g.ni);
  spec.count = g.count;
  spec.seed = bench::parse_seed(g.seed);
  spec.check();
  return spec;
}

std::vector<Scheme> parse_schemes(const std::string& list) {
  std::vector<Scheme> out;
  std::stringstream in(list);
  std::string name;
  while (std::getline(in, name, ',')) {
    auto s = parse_scheme(name);
    if (!s) throw Error(ErrorCode::InvalidInput, "unknown scheme '" + name + "'");
    out.push_back(*s);
  }
  if (out.empty()) throw Error(ErrorCode::InvalidInput, "no schemes given");
  return out;
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

int do_solve(const std::string& file, const std::string& scheme_name, double tol,
             std::optional<int> max_iter, bool as_json, std::ostream& out, std::ostream& err) {
  const auto scheme = parse_scheme(scheme_name);
  if (!scheme) {
    err << "error: unknown scheme '" << scheme_name << "'\n";
    return kExitUsage;
  }
  QpProblem problem;
  try {
    problem = read_problem(file);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  SolverConfig cfg;
  cfg.scheme = *scheme;
  cfg.feas_tol = tol;
  cfg.max_iterations = max_iter;
  try {
    cfg.check();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const SolveOutcome res = solve(problem, cfg);

  if (as_json) {
    nlohmann::json doc;
    doc["status"] = to_string(res.status);
    doc["iterations"] = res.iterations;
    doc["objective"] = res.objective;
    doc["x"] = std::vector<double>(res.x_star.data(), res.x_star.data() + res.x_star.size());
    doc["lambda"] =
        std::vector<double>(res.lambda_star.data(), res.lambda_star.data() + res.lambda_star.size());
    doc["active_rows"] = res.active_rows;
    if (!res.message.empty()) doc["message"] = res.message;
    out << doc.dump(2) << '\n';
  } else {
    out << "status: " << to_string(res.status) << '\n';
    out << "iterations: " << res.iterations << '\n';
    out << "objective: " << format_real(res.objective) << '\n';
    out << "x:";
    for (Eigen::Index i = 0; i < res.x_star.size(); ++i) out << ' ' << format_real(res.x_star(i));
    out << '\n';
    if (!res.message.empty()) out << "message: " << res.message << '\n';
  }
  return res.status == SolveStatus::Optimal ? kExitOk : kExitSolveError;
}

int do_bench(const GenFlags& flags, const std::string& schemes, const std::string& out_path,
             bool no_oracle, std::ostream& out) {
  const bench::GeneratorSpec spec = to_spec(flags);
  bench::SuiteOptions opts;
  opts.with_oracle = !no_oracle;
  const auto records = bench::run_suite(spec, bench::entries_for(parse_schemes(schemes)), opts);
  bench::write_records_csv(std::filesystem::path(out_path), records);
  const auto optimal = std::count_if(records.begin(), records.end(), [](const auto& r) {
    return r.status == SolveStatus::Optimal;
  });
  out << "wrote " << records.size() << " records (" << optimal << " optimal) to " << out_path
      << '\n';
  return kExitOk;
}

int do_profile(const std::string& in_path, const std::string& out_path,
               const std::vector<double>& taus, std::ostream& out) {
  const auto records = bench::read_records_csv(std::filesystem::path(in_path));
  if (records.empty()) throw Error(ErrorCode::MalformedCsv, "no records in " + in_path);
  const auto table = bench::ProfileTable::from_records(records);
  const auto profile = bench::dolan_more(table, taus.empty() ? table.breakpoints() : taus);
  std::ofstream file(out_path);
  if (!file) throw Error(ErrorCode::MalformedCsv, "cannot write " + out_path);
  bench::write_profile_csv(file, profile);
  out << "profiled " << table.solvers().size() << " solvers over " << table.problems().size()
      << " problems";
  if (profile.unsolved_problems > 0) {
    out << " (warning: " << profile.unsolved_problems << " problems unsolved by every solver)";
  }
  out << '\n';
  return kExitOk;
}

int do_gen(const GenFlags& flags, const std::string& out_dir, std::ostream& out) {
  const bench::Generator gen(to_spec(flags));
  std::filesystem::create_directories(out_dir);
  for (int i = 0; i < gen.spec().count; ++i) {
    std::ostringstream name;
    name << "problem_" << std::setw(4) << std::setfill('0') << i << ".json";
    write_problem(std::filesystem::path(out_dir) / name.str(), gen.instance(i));
  }
  out << "wrote " << gen.spec().count << " problems to " << out_dir << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dense active-set QP solver and benchmark harness", "asqp"};
  app.require_subcommand(1);

  std::string solve_file;
  std::string scheme = "auto";
  double tol = kDefaultFeasTol;
  std::optional<int> max_iter;
  bool as_json = false;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one problem file");
  solve_cmd->add_option("file", solve_file, "Problem file (JSON)")->required();
  solve_cmd->add_option("--scheme", scheme, "kkt, projection, sphere or auto");
  solve_cmd->add_option("--tol", tol, "Feasibility / activity tolerance");
  solve_cmd->add_option("--max-iter", max_iter, "Iteration limit");
  solve_cmd->add_flag("--json", as_json, "Print the result as JSON");

  GenFlags bench_flags;
  std::string schemes = "kkt,projection,sphere";
  std::string bench_out;
  bool no_oracle = false;
  auto* bench_cmd = app.add_subcommand("bench", "Time schemes on generated instances");
  add_generator_flags(bench_cmd, bench_flags);
  bench_cmd->add_option("--schemes", schemes, "Comma-separated scheme list");
  bench_cmd->add_option("--out", bench_out, "Output CSV")->required();
  bench_cmd->add_flag("--no-oracle", no_oracle, "Skip reference solutions and error norms");

  std::string profile_in;
  std::string profile_out;
  std::vector<double> taus;
  auto* profile_cmd = app.add_subcommand("profile", "Dolan-More profiles from a bench CSV");
  profile_cmd->add_option("--in", profile_in, "Bench CSV")->required();
  profile_cmd->add_option("--out", profile_out, "Profile CSV")->required();
  profile_cmd->add_option("--tau", taus, "Tau grid (defaults to the ratio breakpoints)")
      ->delimiter(',');

  GenFlags gen_flags;
  std::string out_dir;
  auto* gen_cmd = app.add_subcommand("gen", "Write generated problems as files");
  add_generator_flags(gen_cmd, gen_flags);
  gen_cmd->add_option("--spec", gen_flags.spec_file, "Generator spec file (JSON)");
  gen_cmd->add_option("--out-dir", out_dir, "Output directory")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve_cmd) return do_solve(solve_file, scheme, tol, max_iter, as_json, out, err);
    if (*bench_cmd) return do_bench(bench_flags, schemes, bench_out, no_oracle, out);
    if (*profile_cmd) return do_profile(profile_in, profile_out, taus, out);
    if (*gen_cmd) return do_gen(gen_flags, out_dir, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace asqp::cli
