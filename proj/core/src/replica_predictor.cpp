#include "riskmin/replica_predictor.hpp"

#include <cmath>
#include <string>

#include "riskmin/errors.hpp"

namespace riskmin {

namespace {

void require_alpha(double alpha) {
  if (!(alpha > 1.0)) {
    throw AlphaOutOfRangeError("closed forms require alpha > 1, got " + std::to_string(alpha));
  }
}

}  // namespace

ReplicaPrediction quenched_risk(const PopulationMoments& m, double alpha, double C, double R) {
  require_alpha(alpha);
  ReplicaPrediction p;
  p.coefficients = derived_coefficients(m, C, R);
  p.alpha = alpha;
  p.axis = RiskAxis::ByReturn;
  const double excess = R - p.coefficients.r0;
  p.risk_per_asset =
      (alpha - 1.0) / (2.0 * m.m_cc) * (C * C + excess * excess / p.coefficients.v_big);
  return p;
}

ReplicaPrediction quenched_risk_by_cost(const PopulationMoments& m, double alpha, double C,
                                        double R) {
  require_alpha(alpha);
  ReplicaPrediction p;
  p.coefficients = derived_coefficients(m, C, R);
  p.alpha = alpha;
  p.axis = RiskAxis::ByCost;
  const double excess = C - p.coefficients.c0;
  p.risk_per_asset =
      (alpha - 1.0) / (2.0 * m.m_rr) * (R * R + excess * excess / p.coefficients.v_r);
  return p;
}

double cost_only_risk(const PopulationMoments& m, double alpha, double C) {
  require_alpha(alpha);
  if (!(m.m_cc > 0.0)) {
    throw DegeneratePopulationError("m_cc must be positive");
  }
  return (alpha - 1.0) * C * C / (2.0 * m.m_cc);
}

OrderParameters order_parameters(const PopulationMoments& m, double alpha, double C, double R,
                                 double beta) {
  require_alpha(alpha);
  if (!(beta > 0.0)) {
    throw InvalidSpecError("order parameters require beta > 0, got " + std::to_string(beta));
  }
  // delegates the degeneracy check; the coefficients themselves are not needed
  (void)derived_coefficients(m, C, R);
  const double det = m.m_cc * m.m_rr - m.m_rc * m.m_rc;
  const double q_form = (R * R * m.m_cc - 2.0 * R * C * m.m_rc + C * C * m.m_rr) / det;

  OrderParameters op;
  op.beta = beta;
  op.chi_s = 1.0 / (beta * (alpha - 1.0));
  op.chi_tilde_s = beta * (alpha - 1.0);
  op.q_s = alpha / (alpha - 1.0) * q_form;
  op.q_tilde_s = beta * beta * (alpha - 1.0) * q_form;
  op.theta = beta * (alpha - 1.0) * (R * m.m_cc - C * m.m_rc) / det;
  op.k = beta * (alpha - 1.0) * (C * m.m_rr - R * m.m_rc) / det;
  return op;
}

MomentLimits moment_limits(const PopulationMoments& m, double alpha) {
  require_alpha(alpha);
  MomentLimits lim;
  lim.rr = m.m_rr / (alpha - 1.0);
  lim.rc = m.m_rc / (alpha - 1.0);
  lim.cc = m.m_cc / (alpha - 1.0);
  return lim;
}

SharpeGeometry sharpe_geometry(const PopulationMoments& m, double alpha, double coefficient,
                               RiskAxis axis) {
  require_alpha(alpha);

  // Map both axes onto one parabola: vertex position, curvature scale v, the
  // reference moment, and the moment ratio entering the landmark values.
  double vertex, v, base_moment, ratio;
  if (axis == RiskAxis::ByReturn) {
    const DerivedCoefficients d = derived_coefficients(m, coefficient, 0.0);
    vertex = d.r0;
    v = d.v_big;
    base_moment = m.m_cc;
    ratio = m.m_rc / m.m_cc;
  } else {
    const DerivedCoefficients d = derived_coefficients(m, 0.0, coefficient);
    vertex = d.c0;
    v = d.v_r;
    base_moment = m.m_rr;
    ratio = m.m_rc / m.m_rr;
  }

  const double gap = vertex - coefficient;
  if (std::fabs(gap) <= 1e-12 * std::max({1.0, std::fabs(vertex), std::fabs(coefficient)})) {
    throw VertexAtOriginError(
        "risk vertex coincides with the zero-excess point; the Sharpe argmax diverges");
  }

  SharpeGeometry g;
  g.axis = axis;
  g.argmax = v * coefficient * coefficient / gap + vertex;
  const double base = base_moment / (alpha - 1.0);
  g.s2_at_risk_min = base * (ratio - 1.0) * (ratio - 1.0);
  g.s2_at_risk_max = base * v;
  g.s2_max = base * (v + (ratio - 1.0) * (ratio - 1.0));
  g.pythagorean_residual = g.s2_max - g.s2_at_risk_min - g.s2_at_risk_max;
  return g;
}

AnnealedComparison annealed_comparison(const PopulationMoments& m, double alpha, double C,
                                       double R) {
  require_alpha(alpha);
  const DerivedCoefficients d = derived_coefficients(m, C, R);
  const double excess = R - d.r0;
  AnnealedComparison cmp;
  cmp.annealed_risk = alpha / (2.0 * m.m_cc) * (C * C + excess * excess / d.v_big);
  const double quenched = quenched_risk(m, alpha, C, R).risk_per_asset;
  // 0/0 only at (C, R) = (0, r0); report the everywhere-else-constant ratio.
  cmp.kappa = quenched > 0.0 ? cmp.annealed_risk / quenched : alpha / (alpha - 1.0);
  return cmp;
}

OptimalSolution annealed_portfolio(const AssetPopulation& pop, const ProblemSpec& spec) {
  spec.validate();
  if (spec.n_assets != pop.n_assets()) {
    throw InvalidSpecError("problem size does not match the population");
  }
  const PopulationMoments m = population_moments(pop);
  const double det = m.m_cc * m.m_rr - m.m_rc * m.m_rc;
  if (!(det > 1e-12 * m.m_cc * m.m_rr)) {
    throw CollinearConstraintsError("moment matrix nearly singular: det = " + std::to_string(det));
  }
  const double alpha = spec.period_ratio();
  const double C = spec.cost_coefficient;
  const double R = spec.return_coefficient;

  OptimalSolution sol;
  sol.k_star = alpha * (C * m.m_rr - R * m.m_rc) / det;
  sol.theta_star = alpha * (R * m.m_cc - C * m.m_rc) / det;
  const Eigen::Index n = pop.n_assets();
  sol.portfolio.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    sol.portfolio[i] = (sol.k_star * pop.unit_cost[i] + sol.theta_star * pop.expected_return[i]) /
                       (alpha * pop.variance[i]);
  }
  const double nn = static_cast<double>(n);
  sol.achieved_cost = pop.unit_cost.dot(sol.portfolio) / nn;
  sol.achieved_return = pop.expected_return.dot(sol.portfolio) / nn;
  sol.risk_per_asset =
      0.5 * alpha * (pop.variance.array() * sol.portfolio.array().square()).sum() / nn;
  return sol;
}

}  // namespace riskmin
