#include "asqp/generator.hpp"

#include <charconv>
#include <random>

#include "asqp/error.hpp"

namespace asqp::bench {
namespace {

[[noreturn]] void reject(const std::string& why) {
  throw Error(ErrorCode::InvalidGeneratorSpec, why);
}

DenseMatrix normal_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal;
  DenseMatrix out(rows, cols);
  // Row-major fill so the stream order does not depend on Eigen's storage.
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = normal(rng);
  }
  return out;
}

Vector normal_vector(std::mt19937_64& rng, Eigen::Index size) {
  std::normal_distribution<double> normal;
  Vector out(size);
  for (Eigen::Index i = 0; i < size; ++i) out(i) = normal(rng);
  return out;
}

}  // namespace

CountRule CountRule::parse(std::string_view text) {
  if (text == "n-1") return n_minus_one();
  if (text == "n/2") return half_n();
  long long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 0) {
    reject("constraint count '" + std::string(text) +
           "' must be a nonnegative integer, 'n-1' or 'n/2'");
  }
  return absolute(static_cast<Eigen::Index>(value));
}

Eigen::Index CountRule::resolve(Eigen::Index n) const {
  switch (kind_) {
    case Kind::Absolute: return value_;
    case Kind::NMinusOne: return n - 1;
    case Kind::HalfN: return n / 2;
  }
  return 0;
}

std::string CountRule::to_string() const {
  switch (kind_) {
    case Kind::Absolute: return std::to_string(value_);
    case Kind::NMinusOne: return "n-1";
    case Kind::HalfN: return "n/2";
  }
  return "?";
}

void GeneratorSpec::check() const {
  if (n_min < 1 || n_max < n_min) {
    reject("n range [" + std::to_string(n_min) + ", " + std::to_string(n_max) + "] is empty");
  }
  if (count < 1) reject("count must be at least 1");
  if (!(active_probability >= 0.0 && active_probability <= 1.0)) {
    reject("active probability must lie in [0, 1]");
  }
  if (!(delta > 0.0)) reject("delta must be positive");
  // The equality count is monotone in n for every rule, so the extremes suffice.
  for (Eigen::Index n : {n_min, n_max}) {
    const Eigen::Index ne = n_e.resolve(n);
    if (ne > n - 1) {
      reject("n_e = " + n_e.to_string() + " gives " + std::to_string(ne) +
             " equalities for n = " + std::to_string(n) +
             ", leaving no free direction; the start would be over-determined");
    }
    if (ne < 0 || n_i.resolve(n) < 0) reject("constraint counts must be nonnegative");
  }
}

std::uint64_t parse_seed(std::string_view text) {
  int base = 10;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    text.remove_prefix(2);
    base = 16;
  }
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, base);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    reject("seed '" + std::string(text) + "' is not a decimal or 0x-hex integer");
  }
  return value;
}

Generator::Generator(GeneratorSpec spec) : spec_(std::move(spec)) { spec_.check(); }

QpProblem Generator::instance(int index) const {
  // One independent stream per instance, derived from the suite seed.
  std::seed_seq seq{static_cast<std::uint32_t>(spec_.seed),
                    static_cast<std::uint32_t>(spec_.seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);

  std::uniform_int_distribution<Eigen::Index> pick_n(spec_.n_min, spec_.n_max);
  const Eigen::Index n = pick_n(rng);
  const Eigen::Index ne = spec_.n_e.resolve(n);
  const Eigen::Index ni = spec_.n_i.resolve(n);

  QpProblem p;
  const DenseMatrix M = normal_matrix(rng, n, n);
  p.Q = M.transpose() * M;
  p.Q.diagonal().array() += static_cast<double>(n) * spec_.delta;
  p.Q = 0.5 * (p.Q + p.Q.transpose()).eval();
  p.q = normal_vector(rng, n);
  const Vector x_ref = normal_vector(rng, n);

  p.A = normal_matrix(rng, ne, n);
  while (ne > 0 && linalg::numerical_rank(p.A) < ne) p.A = normal_matrix(rng, ne, n);
  p.b = p.A * x_ref;

  p.G = normal_matrix(rng, ni, n);
  p.h = p.G * x_ref;
  std::bernoulli_distribution tight(spec_.active_probability);
  std::uniform_real_distribution<double> slack(0.1, 1.1);
  Eigen::Index tight_budget = n - ne;
  for (Eigen::Index i = 0; i < ni; ++i) {
    const bool is_tight = tight(rng);
    const double s = slack(rng);
    if (is_tight && tight_budget > 0) {
      --tight_budget;
    } else {
      p.h(i) += s;
    }
  }
  p.x0 = x_ref;
  return p;
}

std::vector<QpProblem> Generator::all() const {
  std::vector<QpProblem> out;
  out.reserve(static_cast<std::size_t>(spec_.count));
  for (int i = 0; i < spec_.count; ++i) out.push_back(instance(i));
  return out;
}

std::vector<QpProblem> generate(const GeneratorSpec& spec) { return Generator(spec).all(); }

}  // namespace asqp::bench
