#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "asqp/model.hpp"

namespace asqp::bench {

/// A constraint count that is either absolute or a function of n
/// (the forms n-1 and n/2, with n/2 rounded down).
class CountRule {
 public:
  enum class Kind { Absolute, NMinusOne, HalfN };

  static CountRule absolute(Eigen::Index value) { return CountRule(Kind::Absolute, value); }
  static CountRule n_minus_one() { return CountRule(Kind::NMinusOne, 0); }
  static CountRule half_n() { return CountRule(Kind::HalfN, 0); }
  /// Accepts a nonnegative integer, "n-1" or "n/2". Throws Error(InvalidGeneratorSpec).
  static CountRule parse(std::string_view text);

  Eigen::Index resolve(Eigen::Index n) const;
  Kind kind() const { return kind_; }
  std::string to_string() const;

  bool operator==(const CountRule&) const = default;

 private:
  CountRule(Kind kind, Eigen::Index value) : kind_(kind), value_(value) {}
  Kind kind_;
  Eigen::Index value_;
};

struct GeneratorSpec {
  Eigen::Index n_min = 10;
  Eigen::Index n_max = 10;
  CountRule n_e = CountRule::absolute(1);
  CountRule n_i = CountRule::absolute(10);
  int count = 1;
  std::uint64_t seed = 0;
  /// Probability that an inequality row is tight at the starting point.
  double active_probability = 0.3;
  /// Shift of the quadratic term: Q = M^T M + n * delta * I.
  double delta = 1e-2;

  /// Throws Error(InvalidGeneratorSpec) with an explanation when the spec
  /// cannot produce well-posed instances.
  void check() const;
};

/// Parses "0x..." hexadecimal or decimal seeds.
std::uint64_t parse_seed(std::string_view text);

/// Deterministic random instances with a feasible starting point.
/// Q = M^T M + n delta I with standard normal M; q, x_ref standard normal;
/// A full row rank with b = A x_ref; G standard normal with h = G x_ref + s,
/// where each row is tight (s = 0) with probability active_probability
/// (capped so equalities plus tight rows never exceed n) and otherwise
/// s ~ U(0.1, 1.1). x0 = x_ref.
class Generator {
 public:
  explicit Generator(GeneratorSpec spec);

  /// Instance `index` of the stream; independent of which other indices are drawn.
  QpProblem instance(int index) const;
  std::vector<QpProblem> all() const;
  const GeneratorSpec& spec() const { return spec_; }

 private:
  GeneratorSpec spec_;
};

std::vector<QpProblem> generate(const GeneratorSpec& spec);

}  // namespace asqp::bench
