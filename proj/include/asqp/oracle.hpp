#pragma once

#include "asqp/model.hpp"

namespace asqp::bench {

/// Largest inequality count for which the oracle enumerates subsets.
inline constexpr Eigen::Index kOracleEnumerationLimit = 12;

struct OracleResult {
  Vector x;
  /// False when the problem was too large to enumerate and the reference was
  /// produced by the KKT-scheme solver with tightened tolerances instead.
  bool exhaustive = true;
  std::size_t candidates_checked = 0;
};

/// Reference solution independent of the active-set iteration.
///
/// For r <= kOracleEnumerationLimit every subset S of inequality rows with
/// m + |S| <= n is treated as a candidate active set; the equality-constrained
/// problem on [A; G(S)] is solved by the range-space formula
///   lambda = -(B Q^-1 B^T)^-1 (c + B Q^-1 q),  x = -Q^-1 (q + B^T lambda),
/// and the candidate that is primal feasible with nonnegative inequality
/// multipliers is returned. Throws Error(OracleInconclusive) if none passes.
OracleResult oracle_solve(const QpProblem& problem);

}  // namespace asqp::bench
