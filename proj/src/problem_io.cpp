#include "asqp/problem_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "asqp/error.hpp"

namespace asqp {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::MalformedProblemFile, "field '" + field + "': " + why);
}

Vector read_vector(const json& doc, const std::string& field, Eigen::Index expected) {
  if (!doc.contains(field)) fail(field, "missing");
  const json& v = doc.at(field);
  if (!v.is_array()) fail(field, "expected an array of numbers");
  if (static_cast<Eigen::Index>(v.size()) != expected) {
    fail(field, "expected " + std::to_string(expected) + " entries, got " +
                    std::to_string(v.size()));
  }
  Vector out(expected);
  for (Eigen::Index i = 0; i < expected; ++i) {
    const json& e = v[static_cast<std::size_t>(i)];
    if (!e.is_number()) fail(field, "entry " + std::to_string(i) + " is not a number");
    out(i) = e.get<double>();
  }
  return out;
}

// Reads an array of rows; returns a rows x n matrix (0 x n when empty).
DenseMatrix read_matrix(const json& doc, const std::string& field, Eigen::Index n,
                        std::optional<Eigen::Index> expected_rows) {
  if (!doc.contains(field)) fail(field, "missing");
  const json& v = doc.at(field);
  if (!v.is_array()) fail(field, "expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(v.size());
  if (expected_rows && rows != *expected_rows) {
    fail(field, "expected " + std::to_string(*expected_rows) + " rows, got " +
                    std::to_string(rows));
  }
  DenseMatrix out(rows, n);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = v[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      fail(field, "row " + std::to_string(i) + " must hold " + std::to_string(n) + " numbers");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const json& e = row[static_cast<std::size_t>(j)];
      if (!e.is_number()) {
        fail(field, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                        ") is not a number");
      }
      out(i, j) = e.get<double>();
    }
  }
  return out;
}

json to_json(const Vector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

json to_json(const DenseMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index j = 0; j < m.cols(); ++j) row[static_cast<std::size_t>(j)] = m(i, j);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

QpProblem parse_problem(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedProblemFile, std::string("not a valid document: ") + e.what());
  }
  if (!doc.is_object()) fail("<root>", "expected an object");

  if (!doc.contains("n")) fail("n", "missing");
  if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 1) {
    fail("n", "expected a positive integer");
  }
  const auto n = static_cast<Eigen::Index>(doc["n"].get<long long>());

  QpProblem p;
  p.Q = read_matrix(doc, "Q", n, n);
  p.q = read_vector(doc, "q", n);
  p.A = read_matrix(doc, "A", n, std::nullopt);
  p.b = read_vector(doc, "b", p.A.rows());
  p.G = read_matrix(doc, "G", n, std::nullopt);
  p.h = read_vector(doc, "h", p.G.rows());
  if (doc.contains("x0") && !doc["x0"].is_null()) p.x0 = read_vector(doc, "x0", n);
  return p;
}

QpProblem read_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::MalformedProblemFile, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

std::string format_problem(const QpProblem& p) {
  json doc;
  doc["n"] = p.n();
  doc["Q"] = to_json(p.Q);
  doc["q"] = to_json(p.q);
  doc["A"] = to_json(p.A);
  doc["b"] = to_json(p.b);
  doc["G"] = to_json(p.G);
  doc["h"] = to_json(p.h);
  if (p.x0) doc["x0"] = to_json(*p.x0);
  return doc.dump(1);
}

void write_problem(const std::filesystem::path& path, const QpProblem& p) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::MalformedProblemFile, "cannot write " + path.string());
  out << format_problem(p) << '\n';
}

}  // namespace asqp
