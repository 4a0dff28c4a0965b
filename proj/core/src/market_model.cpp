#include "riskmin/market_model.hpp"

#include <cmath>
#include <string>

#include "riskmin/errors.hpp"

namespace riskmin {

void AssetPopulation::validate() const {
  const Eigen::Index n = expected_return.size();
  if (n < 2) {
    throw InvalidPopulationError("population needs at least 2 assets, got " + std::to_string(n));
  }
  if (unit_cost.size() != n || variance.size() != n) {
    throw InvalidPopulationError("population vectors disagree in size: returns " +
                                 std::to_string(n) + ", costs " + std::to_string(unit_cost.size()) +
                                 ", variances " + std::to_string(variance.size()));
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!std::isfinite(expected_return[i]) || !std::isfinite(unit_cost[i]) ||
        !std::isfinite(variance[i])) {
      throw InvalidPopulationError("non-finite population entry at asset " + std::to_string(i));
    }
    if (variance[i] <= 0.0) {
      throw InvalidPopulationError("variance must be positive, asset " + std::to_string(i) +
                                   " has v = " + std::to_string(variance[i]));
    }
  }
}

void ProblemSpec::validate() const {
  if (n_assets < 2) {
    throw InvalidSpecError("n_assets must be >= 2, got " + std::to_string(n_assets));
  }
  if (n_periods <= n_assets) {
    throw InvalidSpecError("n_periods must exceed n_assets for an invertible covariance, got p = " +
                           std::to_string(n_periods) + ", N = " + std::to_string(n_assets));
  }
  if (!std::isfinite(cost_coefficient) || !std::isfinite(return_coefficient)) {
    throw InvalidSpecError("cost and return coefficients must be finite");
  }
}

PopulationMoments population_moments(const AssetPopulation& pop) {
  pop.validate();
  const Eigen::Index n = pop.n_assets();
  PopulationMoments m;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = pop.expected_return[i];
    const double c = pop.unit_cost[i];
    const double v = pop.variance[i];
    m.m_cc += c * c / v;
    m.m_rc += r * c / v;
    m.m_rr += r * r / v;
    m.mean_log_v += std::log(v);
  }
  m.m_cc /= static_cast<double>(n);
  m.m_rc /= static_cast<double>(n);
  m.m_rr /= static_cast<double>(n);
  m.mean_log_v /= static_cast<double>(n);
  return m;
}

DerivedCoefficients derived_coefficients(const PopulationMoments& m, double C, double R) {
  if (m.m_cc <= 0.0 || m.m_rr <= 0.0) {
    throw DegeneratePopulationError("second moments must be positive");
  }
  DerivedCoefficients d;
  d.r0 = C * m.m_rc / m.m_cc;
  d.v_big = m.m_rr / m.m_cc - (m.m_rc / m.m_cc) * (m.m_rc / m.m_cc);
  d.c0 = R * m.m_rc / m.m_rr;
  d.v_r = m.m_cc / m.m_rr - (m.m_rc / m.m_rr) * (m.m_rc / m.m_rr);
  const double eps_degenerate = 1e-12 * (m.m_rr / m.m_cc);
  if (d.v_big < eps_degenerate) {
    throw DegeneratePopulationError("returns and costs are effectively proportional (v_big = " +
                                    std::to_string(d.v_big) + ")");
  }
  return d;
}

}  // namespace riskmin
