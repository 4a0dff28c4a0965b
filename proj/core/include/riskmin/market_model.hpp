#pragma once

#include <Eigen/Dense>

namespace riskmin {

// Static description of N assets: expected period return r_i, unit purchase
// cost c_i, and period return variance v_i > 0.
struct AssetPopulation {
  Eigen::VectorXd expected_return;  // r
  Eigen::VectorXd unit_cost;        // c
  Eigen::VectorXd variance;         // v

  Eigen::Index n_assets() const { return expected_return.size(); }

  // Throws InvalidPopulationError unless all three vectors share one size
  // N >= 2, every entry is finite, and every variance is strictly positive.
  void validate() const;
};

// One constrained minimization instance: N assets observed over p > N periods,
// with the budget (1/N) c.w = C and return (1/N) r.w = R constraints.
struct ProblemSpec {
  double cost_coefficient = 0.0;    // C
  double return_coefficient = 0.0;  // R
  int n_assets = 0;                 // N
  int n_periods = 0;                // p

  // alpha = p / N; every large-N closed form requires alpha > 1.
  double period_ratio() const {
    return static_cast<double>(n_periods) / static_cast<double>(n_assets);
  }

  void validate() const;  // throws InvalidSpecError
};

// Inverse-variance-weighted second moments of (c, r). These four numbers are
// the only population statistics the closed-form predictions depend on.
struct PopulationMoments {
  double m_cc = 0.0;        // < c^2 / v >
  double m_rc = 0.0;        // < r c / v >
  double m_rr = 0.0;        // < r^2 / v >
  double mean_log_v = 0.0;  // < log v >
};

// Coefficients of the two completed-square forms of the risk surface:
// by return, epsilon ~ C^2 + (R - r0)^2 / v_big; by cost, R^2 + (C - c0)^2 / v_r.
struct DerivedCoefficients {
  double r0 = 0.0;     // risk-minimizing return at fixed C
  double v_big = 0.0;  // curvature scale of the return parabola
  double c0 = 0.0;     // risk-minimizing cost at fixed R
  double v_r = 0.0;    // curvature scale of the cost parabola
};

PopulationMoments population_moments(const AssetPopulation& pop);

// Throws DegeneratePopulationError when the discriminant collapses,
// i.e. v_big < 1e-12 * (m_rr / m_cc).
DerivedCoefficients derived_coefficients(const PopulationMoments& m, double C, double R);

}  // namespace riskmin
