#include "riskmin/exact_solver.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>

#include "riskmin/errors.hpp"

namespace riskmin {

namespace {

struct FactoredForms {
  Eigen::LLT<Eigen::MatrixXd> llt;
  Eigen::MatrixXd solutions;  // column 0: J^-1 c, column 1: J^-1 r
  QuadraticForms forms;
};

// One Cholesky factorization, two triangular solves; a, b, d fall out as inner
// products against the original vectors.
FactoredForms factor_and_solve(const WishartMatrix& j, const AssetPopulation& pop) {
  pop.validate();
  const Eigen::Index n = pop.n_assets();
  if (j.entries.rows() != n || j.entries.cols() != n) {
    throw InvalidSpecError("covariance size does not match the population");
  }
  FactoredForms f;
  f.llt.compute(j.entries);
  if (f.llt.info() != Eigen::Success) {
    throw SingularMatrixError("draw covariance is not positive definite");
  }
  Eigen::MatrixXd rhs(n, 2);
  rhs.col(0) = pop.unit_cost;
  rhs.col(1) = pop.expected_return;
  f.solutions = f.llt.solve(rhs);
  f.forms.a = pop.unit_cost.dot(f.solutions.col(0));
  f.forms.b = pop.unit_cost.dot(f.solutions.col(1));
  f.forms.d = pop.expected_return.dot(f.solutions.col(1));
  const double b_alt = pop.expected_return.dot(f.solutions.col(0));
  f.forms.symmetry_residual = std::fabs(f.forms.b - b_alt) / std::max(1.0, std::fabs(f.forms.b));
  if (f.forms.symmetry_residual > 1e-10) {
    throw SingularMatrixError("cross form c.J^-1 r disagrees with r.J^-1 c, residual " +
                              std::to_string(f.forms.symmetry_residual));
  }
  f.forms.b = 0.5 * (f.forms.b + b_alt);
  return f;
}

}  // namespace

QuadraticForms quadratic_forms(const WishartMatrix& j, const AssetPopulation& pop) {
  return factor_and_solve(j, pop).forms;
}

OptimalSolution optimal_portfolio(const WishartMatrix& j, const AssetPopulation& pop,
                                  const ProblemSpec& spec) {
  spec.validate();
  if (spec.n_assets != pop.n_assets()) {
    throw InvalidSpecError("problem size does not match the population");
  }
  const FactoredForms f = factor_and_solve(j, pop);
  const double a = f.forms.a;
  const double b = f.forms.b;
  const double d = f.forms.d;
  const double discriminant = a * d - b * b;
  if (!(discriminant > 1e-10 * a * d)) {
    throw CollinearConstraintsError("constraint vectors nearly collinear: a d - b^2 = " +
                                    std::to_string(discriminant));
  }

  const double n = static_cast<double>(spec.n_assets);
  const double C = spec.cost_coefficient;
  const double R = spec.return_coefficient;

  OptimalSolution sol;
  sol.k_star = n * (-R * b + C * d) / discriminant;
  sol.theta_star = n * (R * a - C * b) / discriminant;
  sol.portfolio = sol.theta_star * f.solutions.col(1) + sol.k_star * f.solutions.col(0);
  sol.risk_per_asset = 0.5 * n * (R * R * a - 2.0 * R * C * b + C * C * d) / discriminant;
  sol.achieved_cost = pop.unit_cost.dot(sol.portfolio) / n;
  sol.achieved_return = pop.expected_return.dot(sol.portfolio) / n;

  const double direct = portfolio_risk(j, sol.portfolio);
  const double risk_gap =
      std::fabs(direct - sol.risk_per_asset) / std::max(1.0, std::fabs(sol.risk_per_asset));
  if (risk_gap > 1e-8) {
    sol.warning = "closed-form risk and direct recomputation disagree by " +
                  std::to_string(risk_gap) + " relative; solve is ill-conditioned";
  }
  const double cost_gap = std::fabs(sol.achieved_cost - C) / std::max(1.0, std::fabs(C));
  const double return_gap = std::fabs(sol.achieved_return - R) / std::max(1.0, std::fabs(R));
  if (cost_gap > 1e-8 || return_gap > 1e-8) {
    if (!sol.warning.empty()) sol.warning += "; ";
    sol.warning += "constraint residuals " + std::to_string(cost_gap) + " (cost), " +
                   std::to_string(return_gap) + " (return) exceed 1e-8";
  }
  return sol;
}

double portfolio_risk(const WishartMatrix& j, const Eigen::VectorXd& w) {
  if (j.entries.rows() != w.size() || j.entries.cols() != w.size()) {
    throw InvalidSpecError("portfolio size does not match the covariance");
  }
  const double n = static_cast<double>(w.size());
  return 0.5 * w.dot(j.entries.selfadjointView<Eigen::Lower>() * w) / n;
}

double sharpe_ratio(double return_coefficient, double cost_coefficient, double risk_per_asset) {
  if (!(risk_per_asset > 0.0)) {
    throw NonpositiveRiskError("sharpe ratio needs positive risk, got " +
                               std::to_string(risk_per_asset));
  }
  return (return_coefficient - cost_coefficient) / std::sqrt(2.0 * risk_per_asset);
}

}  // namespace riskmin
