#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "riskmin/market_model.hpp"
#include "riskmin/rng.hpp"

namespace riskmin {

// Bounded Pareto law with density proportional to x^-exponent on [lower, upper].
// exponent must stay away from 1 (the normalization switches branch there).
struct ParetoSpec {
  double exponent = 0.0;
  double lower = 0.0;
  double upper = 0.0;

  void validate() const;  // throws InvalidSpecError
};

// Full description of one Monte Carlo sweep: problem size, budget level, the
// grid of return levels to scan, the population generators, and the trial count.
struct ScenarioConfig {
  int n_assets = 0;
  int n_periods = 0;
  double cost_coefficient = 0.0;
  std::vector<double> return_grid;  // strictly increasing, nonempty
  ParetoSpec pareto_r;              // expected returns r_i
  ParetoSpec pareto_h;              // variance prefactors h_i (v_i = h_i r_i^2)
  int n_trials = 0;
  std::uint64_t master_seed = 0;

  double period_ratio() const {
    return static_cast<double>(n_periods) / static_cast<double>(n_assets);
  }

  void validate() const;  // throws InvalidSpecError
};

// N x p matrix of centered return fluctuations, pre-scaled by 1/sqrt(N):
// entry(i, mu) = (x_{i mu} - r_i) / sqrt(N) with x_{i mu} ~ Normal(r_i, v_i).
struct ReturnsMatrix {
  Eigen::MatrixXd entries;
};

// J = X X^T for a ReturnsMatrix X; symmetric positive semidefinite, and
// positive definite with probability one when p > N.
struct WishartMatrix {
  Eigen::MatrixXd entries;
};

// Inverse CDF of the bounded Pareto law at u in [0, 1]; monotone, endpoints map
// to the support endpoints.
double bounded_pareto_icdf(const ParetoSpec& spec, double u);

// One draw; consumes exactly one uniform. Result clamped to [lower, upper].
double sample_bounded_pareto(const ParetoSpec& spec, Rng& rng);

// Builds a population from raw draws: v_i = h_i r_i^2, c_i = r_i z_i.
AssetPopulation assemble_population(const Eigen::VectorXd& r, const Eigen::VectorXd& h,
                                    const Eigen::VectorXd& z);

// Draws r_i, h_i from the two Pareto laws and z_i ~ U[0,1), in asset order,
// three draws per asset.
AssetPopulation generate_population(const ScenarioConfig& cfg, Rng& rng);

// Draws the N x p fluctuation matrix row by row; one gaussian per entry.
ReturnsMatrix generate_returns(const AssetPopulation& pop, int n_periods, Rng& rng);

WishartMatrix wishart(const ReturnsMatrix& x);

// E[x^power] under the bounded Pareto law, closed form. The branch switches
// when power - exponent + 1 vanishes.
double analytic_pareto_mean(const ParetoSpec& spec, int power);

// E[log x] under the bounded Pareto law.
double analytic_pareto_log_mean(const ParetoSpec& spec);

// Distribution-level moments of the generated populations: with z ~ U[0,1),
// c^2/v = z^2/h, rc/v = z/h, r^2/v = 1/h, so everything reduces to E[1/h]
// and the log means.
PopulationMoments analytic_population_moments(const ParetoSpec& pareto_r,
                                              const ParetoSpec& pareto_h);

}  // namespace riskmin
