#pragma once

#include <string>

#include <Eigen/Dense>

#include "riskmin/market_model.hpp"
#include "riskmin/scenario_gen.hpp"

namespace riskmin {

// The three quadratic forms of the inverse draw covariance that determine the
// whole constrained family: a = c.J^-1 c, b = c.J^-1 r, d = r.J^-1 r.
struct QuadraticForms {
  double a = 0.0;
  double b = 0.0;
  double d = 0.0;
  // |c.J^-1 r - r.J^-1 c| / max(1, |b|), from two independent solves; should
  // sit at rounding level for any healthy factorization.
  double symmetry_residual = 0.0;
};

struct OptimalSolution {
  Eigen::VectorXd portfolio;    // w*
  double k_star = 0.0;          // budget multiplier
  double theta_star = 0.0;      // return multiplier
  double risk_per_asset = 0.0;  // (1/2N) w*.J w*, via the closed form
  double achieved_cost = 0.0;   // (1/N) c.w*
  double achieved_return = 0.0; // (1/N) r.w*
  // Nonempty when a conditioning cross-check tripped (closed-form risk vs
  // direct recomputation, or constraint feasibility); never silently dropped.
  std::string warning;
};

// Factors J once (Cholesky) and solves for both constraint vectors.
// Throws SingularMatrixError when J is not positive definite and
// InvalidPopulationError/InvalidSpecError on malformed inputs; verifies the
// b-form against an independent inner product at 1e-10 relative.
QuadraticForms quadratic_forms(const WishartMatrix& j, const AssetPopulation& pop);

// Exact finite-N minimizer of (1/2) w.J w under both linear constraints.
// Throws CollinearConstraintsError when a d - b^2 <= 1e-10 * a d.
OptimalSolution optimal_portfolio(const WishartMatrix& j, const AssetPopulation& pop,
                                  const ProblemSpec& spec);

// (1/2N) w.J w evaluated directly.
double portfolio_risk(const WishartMatrix& j, const Eigen::VectorXd& w);

// S = (R - C) / sqrt(2 epsilon); throws NonpositiveRiskError when epsilon <= 0.
double sharpe_ratio(double return_coefficient, double cost_coefficient, double risk_per_asset);

}  // namespace riskmin
