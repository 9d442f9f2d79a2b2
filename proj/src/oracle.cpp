#include "asqp/oracle.hpp"

#include <limits>

#include "asqp/error.hpp"
#include "asqp/solver.hpp"

namespace asqp::bench {
namespace {

OracleResult reference_by_solver(const QpProblem& p) {
  SolverConfig cfg;
  cfg.scheme = Scheme::Kkt;
  cfg.direction_tol = 1e-12;
  cfg.multiplier_tol = 1e-10;
  const SolveOutcome out = solve(p, cfg);
  if (out.status != SolveStatus::Optimal) {
    throw Error(ErrorCode::OracleInconclusive,
                "reference solve ended with " + std::string(to_string(out.status)));
  }
  return {out.x_star, false, 0};
}

}  // namespace

OracleResult oracle_solve(const QpProblem& p) {
  if (p.r() > kOracleEnumerationLimit) return reference_by_solver(p);

  const Eigen::Index n = p.n();
  const Eigen::Index m = p.m();
  const Eigen::Index r = p.r();

  Eigen::LLT<DenseMatrix> llt(p.Q);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::NotPositiveDefinite, "oracle requires a positive definite Q");
  }
  // Precompute Q^-1 applied to every constraint row and to q.
  DenseMatrix rows(m + r, n);
  if (m > 0) rows.topRows(m) = p.A;
  if (r > 0) rows.bottomRows(r) = p.G;
  const DenseMatrix qinv_rows_t = llt.solve(rows.transpose());  // n x (m + r)
  const Vector qinv_q = llt.solve(p.q);

  const double scale = 1.0 + p.q.cwiseAbs().maxCoeff();
  const double feas_tol = 1e-9 * scale;
  const double mult_tol = 1e-9 * scale;

  OracleResult best;
  double best_obj = std::numeric_limits<double>::infinity();
  bool found = false;
  std::vector<Eigen::Index> chosen;

  for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
    chosen.clear();
    for (Eigen::Index i = 0; i < r; ++i) {
      if (mask & (1u << i)) chosen.push_back(m + i);
    }
    const auto s = m + static_cast<Eigen::Index>(chosen.size());
    if (s > n) continue;
    ++best.candidates_checked;

    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < m; ++i) idx.push_back(i);
    idx.insert(idx.end(), chosen.begin(), chosen.end());

    DenseMatrix B(s, n);
    DenseMatrix qinv_bt(n, s);
    Vector c(s);
    for (Eigen::Index j = 0; j < s; ++j) {
      const Eigen::Index k = idx[static_cast<std::size_t>(j)];
      B.row(j) = rows.row(k);
      qinv_bt.col(j) = qinv_rows_t.col(k);
      c(j) = k < m ? p.b(k) : p.h(k - m);
    }

    Vector x;
    Vector lambda(s);
    if (s == 0) {
      x = -qinv_q;
    } else {
      const DenseMatrix schur = B * qinv_bt;
      Eigen::FullPivLU<DenseMatrix> lu(schur);
      if (lu.rank() < s) continue;
      lambda = -lu.solve(c + B * qinv_q);
      x = -qinv_q - qinv_bt * lambda;
    }

    bool ok = true;
    for (Eigen::Index j = m; j < s && ok; ++j) ok = lambda(j) >= -mult_tol;
    if (!ok) continue;
    if (m > 0 && (p.A * x - p.b).cwiseAbs().maxCoeff() > feas_tol) continue;
    if (r > 0 && (p.G * x - p.h).maxCoeff() > feas_tol) continue;

    const double obj = p.objective(x);
    if (!found || obj < best_obj) {
      best.x = x;
      best_obj = obj;
      found = true;
    }
  }
  if (!found) {
    throw Error(ErrorCode::OracleInconclusive, "no candidate active set certifies optimality");
  }
  best.exhaustive = true;
  return best;
}

}  // namespace asqp::bench
