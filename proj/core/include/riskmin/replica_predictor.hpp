#pragma once

#include "riskmin/exact_solver.hpp"
#include "riskmin/market_model.hpp"

namespace riskmin {

// Which coefficient stays fixed while the other scans: ByReturn fixes C and
// scans R, ByCost fixes R and scans C.
enum class RiskAxis { ByReturn, ByCost };

// Large-N prediction of the minimal risk per asset for one (alpha, C, R).
struct ReplicaPrediction {
  double risk_per_asset = 0.0;
  DerivedCoefficients coefficients;
  double alpha = 0.0;
  RiskAxis axis = RiskAxis::ByReturn;
};

// Saddle-point order parameters of the replica-symmetric solution at inverse
// temperature beta; the .._tilde entries are the conjugate pair.
struct OrderParameters {
  double chi_s = 0.0;
  double q_s = 0.0;
  double chi_tilde_s = 0.0;
  double q_tilde_s = 0.0;
  double theta = 0.0;  // return multiplier density
  double k = 0.0;      // budget multiplier density
  double beta = 0.0;
};

// Large-N limits of the scaled quadratic forms (1/N) r.J^-1 r, (1/N) r.J^-1 c,
// (1/N) c.J^-1 c: the population moments divided by (alpha - 1).
struct MomentLimits {
  double rr = 0.0;
  double rc = 0.0;
  double cc = 0.0;
};

// The squared Sharpe ratio along one axis is a ratio of quadratics whose
// maximum splits Pythagorean-style between the two parabola landmarks.
struct SharpeGeometry {
  double argmax = 0.0;           // R* (ByReturn) or C* (ByCost)
  double s2_max = 0.0;           // squared Sharpe at the argmax
  double s2_at_risk_min = 0.0;   // squared Sharpe at the risk-minimizing point
  double s2_at_risk_max = 0.0;   // limiting squared Sharpe far from the vertex
  double pythagorean_residual = 0.0;  // s2_max - s2_at_risk_min - s2_at_risk_max
  RiskAxis axis = RiskAxis::ByReturn;
};

struct AnnealedComparison {
  double annealed_risk = 0.0;  // optimistic risk from averaging the draw first
  double kappa = 0.0;          // annealed / quenched, alpha / (alpha - 1) identically
};

// epsilon(R) at fixed C:
//   (alpha - 1) / (2 m_cc) * (C^2 + (R - r0)^2 / v_big).
// Throws AlphaOutOfRangeError unless alpha > 1, DegeneratePopulationError via
// the derived coefficients.
ReplicaPrediction quenched_risk(const PopulationMoments& m, double alpha, double C, double R);

// Mirror image, epsilon(C) at fixed R with (c0, v_r).
ReplicaPrediction quenched_risk_by_cost(const PopulationMoments& m, double alpha, double C,
                                        double R);

// Budget-only problem (return constraint dropped): (alpha - 1) C^2 / (2 m_cc).
double cost_only_risk(const PopulationMoments& m, double alpha, double C);

// Requires alpha > 1 and beta > 0.
OrderParameters order_parameters(const PopulationMoments& m, double alpha, double C, double R,
                                 double beta);

MomentLimits moment_limits(const PopulationMoments& m, double alpha);

// For ByReturn, coefficient is C; for ByCost it is R. Throws
// VertexAtOriginError when the risk vertex sits at zero excess (r0 = C or
// c0 = R), where the argmax formula degenerates.
SharpeGeometry sharpe_geometry(const PopulationMoments& m, double alpha, double coefficient,
                               RiskAxis axis = RiskAxis::ByReturn);

AnnealedComparison annealed_comparison(const PopulationMoments& m, double alpha, double C,
                                       double R);

// Finite-N minimizer of the draw-averaged risk E[H] = (alpha/2) sum_i v_i w_i^2:
// w_i = (k c_i + theta r_i) / (alpha v_i) with (k, theta) solving the 2x2
// moment system. risk_per_asset holds the expected risk per asset of that
// portfolio, not a single-draw value.
OptimalSolution annealed_portfolio(const AssetPopulation& pop, const ProblemSpec& spec);

}  // namespace riskmin
