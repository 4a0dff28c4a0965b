#include "riskmin/scenario_gen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "riskmin/errors.hpp"

namespace riskmin {

void ParetoSpec::validate() const {
  if (!std::isfinite(exponent) || !std::isfinite(lower) || !std::isfinite(upper)) {
    throw InvalidSpecError("pareto parameters must be finite");
  }
  if (!(lower > 0.0) || !(upper > lower)) {
    throw InvalidSpecError("pareto support needs 0 < lower < upper, got [" +
                           std::to_string(lower) + ", " + std::to_string(upper) + "]");
  }
  if (!(exponent > 0.0)) {
    throw InvalidSpecError("pareto exponent must be positive, got " + std::to_string(exponent));
  }
  if (std::fabs(exponent - 1.0) <= 1e-9) {
    throw InvalidSpecError("pareto exponent must stay away from 1");
  }
}

void ScenarioConfig::validate() const {
  if (n_assets < 2) {
    throw InvalidSpecError("n_assets must be >= 2, got " + std::to_string(n_assets));
  }
  if (n_periods <= n_assets) {
    throw InvalidSpecError("n_periods must exceed n_assets, got p = " + std::to_string(n_periods) +
                           ", N = " + std::to_string(n_assets));
  }
  if (!std::isfinite(cost_coefficient)) {
    throw InvalidSpecError("cost_coefficient must be finite");
  }
  if (return_grid.empty()) {
    throw InvalidSpecError("return_grid must be nonempty");
  }
  for (std::size_t j = 0; j < return_grid.size(); ++j) {
    if (!std::isfinite(return_grid[j])) {
      throw InvalidSpecError("return_grid entries must be finite");
    }
    if (j > 0 && !(return_grid[j] > return_grid[j - 1])) {
      throw InvalidSpecError("return_grid must be strictly increasing at index " +
                             std::to_string(j));
    }
  }
  pareto_r.validate();
  pareto_h.validate();
  if (n_trials < 1) {
    throw InvalidSpecError("n_trials must be >= 1, got " + std::to_string(n_trials));
  }
}

double bounded_pareto_icdf(const ParetoSpec& spec, double u) {
  const double s = 1.0 - spec.exponent;
  const double lo = std::pow(spec.lower, s);
  const double hi = std::pow(spec.upper, s);
  const double x = std::pow(lo + u * (hi - lo), 1.0 / s);
  return std::clamp(x, spec.lower, spec.upper);
}

double sample_bounded_pareto(const ParetoSpec& spec, Rng& rng) {
  return bounded_pareto_icdf(spec, rng.uniform01());
}

AssetPopulation assemble_population(const Eigen::VectorXd& r, const Eigen::VectorXd& h,
                                    const Eigen::VectorXd& z) {
  if (r.size() != h.size() || r.size() != z.size()) {
    throw InvalidPopulationError("population draw vectors disagree in size");
  }
  AssetPopulation pop;
  pop.expected_return = r;
  pop.variance = h.array() * r.array().square();
  pop.unit_cost = r.array() * z.array();
  pop.validate();
  return pop;
}

AssetPopulation generate_population(const ScenarioConfig& cfg, Rng& rng) {
  cfg.validate();
  const int n = cfg.n_assets;
  Eigen::VectorXd r(n), h(n), z(n);
  for (int i = 0; i < n; ++i) {
    r[i] = sample_bounded_pareto(cfg.pareto_r, rng);
    h[i] = sample_bounded_pareto(cfg.pareto_h, rng);
    z[i] = rng.uniform01();
  }
  return assemble_population(r, h, z);
}

ReturnsMatrix generate_returns(const AssetPopulation& pop, int n_periods, Rng& rng) {
  pop.validate();
  const Eigen::Index n = pop.n_assets();
  if (n_periods <= n) {
    throw InvalidSpecError("n_periods must exceed the asset count");
  }
  ReturnsMatrix x;
  x.entries.resize(n, n_periods);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double scale = std::sqrt(pop.variance[i]) * inv_sqrt_n;
    for (int mu = 0; mu < n_periods; ++mu) {
      x.entries(i, mu) = scale * rng.gaussian();
    }
  }
  return x;
}

WishartMatrix wishart(const ReturnsMatrix& x) {
  const Eigen::Index n = x.entries.rows();
  WishartMatrix j;
  j.entries = Eigen::MatrixXd::Zero(n, n);
  j.entries.selfadjointView<Eigen::Lower>().rankUpdate(x.entries, 1.0);
  // mirror the accumulated lower triangle so entries(i,j) == entries(j,i) exactly
  j.entries.triangularView<Eigen::StrictlyUpper>() = j.entries.transpose();
  return j;
}

double analytic_pareto_mean(const ParetoSpec& spec, int power) {
  spec.validate();
  const double s = 1.0 - spec.exponent;
  const double norm = s / (std::pow(spec.upper, s) - std::pow(spec.lower, s));
  const double q = static_cast<double>(power) + s;
  if (std::fabs(q) <= 1e-9) {
    return norm * std::log(spec.upper / spec.lower);
  }
  return norm * (std::pow(spec.upper, q) - std::pow(spec.lower, q)) / q;
}

double analytic_pareto_log_mean(const ParetoSpec& spec) {
  spec.validate();
  const double s = 1.0 - spec.exponent;
  const double norm = s / (std::pow(spec.upper, s) - std::pow(spec.lower, s));
  const auto antideriv = [s](double x) {
    return std::pow(x, s) * (s * std::log(x) - 1.0) / (s * s);
  };
  return norm * (antideriv(spec.upper) - antideriv(spec.lower));
}

PopulationMoments analytic_population_moments(const ParetoSpec& pareto_r,
                                              const ParetoSpec& pareto_h) {
  // z ~ U[0,1): E[z] = 1/2, E[z^2] = 1/3. r drops out of every ratio moment.
  const double mean_h_inv = analytic_pareto_mean(pareto_h, -1);
  PopulationMoments m;
  m.m_cc = mean_h_inv / 3.0;
  m.m_rc = mean_h_inv / 2.0;
  m.m_rr = mean_h_inv;
  m.mean_log_v = analytic_pareto_log_mean(pareto_h) + 2.0 * analytic_pareto_log_mean(pareto_r);
  return m;
}

}  // namespace riskmin
