#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "asqp/error.hpp"
#include "asqp/suite.hpp"

namespace asqp::bench {
namespace {

constexpr const char* kHeader =
    "problem_id,n,n_e,n_i,solver,status,iterations,wall_time_s,error_norm";

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <typename T>
T parse_number(const std::string& text, std::size_t line, const char* column) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::MalformedCsv, "line " + std::to_string(line) + ", column " + column +
                                             ": '" + text + "' is not a number");
  }
  return value;
}

}  // namespace

void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << kHeader << '\n';
  for (const RunRecord& r : records) {
    out << r.problem_id << ',' << r.n << ',' << r.n_e << ',' << r.n_i << ',' << r.solver << ','
        << to_string(r.status) << ',' << r.iterations << ',' << format_double(r.wall_time_s)
        << ',';
    if (r.error_norm) out << format_double(*r.error_norm);
    out << '\n';
  }
}

void write_records_csv(const std::filesystem::path& path, const std::vector<RunRecord>& records) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::MalformedCsv, "cannot write " + path.string());
  write_records_csv(out, records);
}

std::vector<RunRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::MalformedCsv, "empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) {
    throw Error(ErrorCode::MalformedCsv, "unexpected header '" + line + "'");
  }
  std::vector<RunRecord> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 9) {
      throw Error(ErrorCode::MalformedCsv, "line " + std::to_string(lineno) + ": expected 9 fields");
    }
    RunRecord r;
    r.problem_id = parse_number<int>(f[0], lineno, "problem_id");
    r.n = parse_number<Eigen::Index>(f[1], lineno, "n");
    r.n_e = parse_number<Eigen::Index>(f[2], lineno, "n_e");
    r.n_i = parse_number<Eigen::Index>(f[3], lineno, "n_i");
    r.solver = f[4];
    auto status = parse_status(f[5]);
    if (!status) {
      throw Error(ErrorCode::MalformedCsv,
                  "line " + std::to_string(lineno) + ", column status: unknown '" + f[5] + "'");
    }
    r.status = *status;
    r.iterations = parse_number<int>(f[6], lineno, "iterations");
    r.wall_time_s = parse_number<double>(f[7], lineno, "wall_time_s");
    if (!f[8].empty()) r.error_norm = parse_number<double>(f[8], lineno, "error_norm");
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<RunRecord> read_records_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::MalformedCsv, "cannot open " + path.string());
  return read_records_csv(in);
}

}  // namespace asqp::bench
