#include "riskmin/experiment.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include <Eigen/Cholesky>

#include "riskmin/errors.hpp"
#include "riskmin/replica_predictor.hpp"
#include "riskmin/rng.hpp"

namespace riskmin {

namespace {

double sigma_units(double mean, double predicted, double stderr_value) {
  const double gap = std::fabs(mean - predicted);
  if (stderr_value > 0.0) return gap / stderr_value;
  return gap == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

struct MeanStderr {
  double mean = 0.0;
  double stderr_value = 0.0;
};

MeanStderr mean_and_stderr(const std::vector<double>& values) {
  const double n = static_cast<double>(values.size());
  MeanStderr out;
  for (double v : values) out.mean += v;
  out.mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.stderr_value = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  return out;
}

}  // namespace

TrialResult run_trial(const ScenarioConfig& cfg, int trial_index) {
  cfg.validate();
  const std::string tag = "trial " + std::to_string(trial_index) + ": ";
  try {
    Rng rng(trial_seed(cfg.master_seed, static_cast<std::uint64_t>(trial_index)));
    const AssetPopulation pop = generate_population(cfg, rng);
    const ReturnsMatrix x = generate_returns(pop, cfg.n_periods, rng);
    const WishartMatrix j = wishart(x);

    // factor once, reuse across the whole grid
    Eigen::LLT<Eigen::MatrixXd> llt(j.entries);
    if (llt.info() != Eigen::Success) {
      throw SingularMatrixError("draw covariance is not positive definite");
    }
    const Eigen::Index n = pop.n_assets();
    Eigen::MatrixXd rhs(n, 2);
    rhs.col(0) = pop.unit_cost;
    rhs.col(1) = pop.expected_return;
    const Eigen::MatrixXd y = llt.solve(rhs);

    TrialResult result;
    result.trial_index = trial_index;
    result.forms.a = pop.unit_cost.dot(y.col(0));
    result.forms.b = pop.unit_cost.dot(y.col(1));
    result.forms.d = pop.expected_return.dot(y.col(1));
    const double b_alt = pop.expected_return.dot(y.col(0));
    result.forms.symmetry_residual =
        std::fabs(result.forms.b - b_alt) / std::max(1.0, std::fabs(result.forms.b));
    if (result.forms.symmetry_residual > 1e-10) {
      throw SingularMatrixError("cross-form symmetry residual " +
                                std::to_string(result.forms.symmetry_residual));
    }
    result.forms.b = 0.5 * (result.forms.b + b_alt);

    const double a = result.forms.a;
    const double b = result.forms.b;
    const double d = result.forms.d;
    const double discriminant = a * d - b * b;
    if (!(discriminant > 1e-10 * a * d)) {
      throw CollinearConstraintsError("constraint vectors nearly collinear");
    }

    const double nn = static_cast<double>(n);
    const double C = cfg.cost_coefficient;
    result.points.reserve(cfg.return_grid.size());
    for (double R : cfg.return_grid) {
      TrialPoint pt;
      pt.return_coefficient = R;
      pt.risk_per_asset = 0.5 * nn * (R * R * a - 2.0 * R * C * b + C * C * d) / discriminant;
      if (!(pt.risk_per_asset > 0.0) || !std::isfinite(pt.risk_per_asset)) {
        throw CollinearConstraintsError("nonpositive risk at R = " + std::to_string(R) +
                                        "; solve is ill-conditioned");
      }

      // implied optimum is a known combination of the two solves; verify its
      // feasibility rather than trusting the algebra blindly
      const double k_star = nn * (-R * b + C * d) / discriminant;
      const double theta_star = nn * (R * a - C * b) / discriminant;
      const Eigen::VectorXd w = theta_star * y.col(1) + k_star * y.col(0);
      const double cost_gap =
          std::fabs(pop.unit_cost.dot(w) / nn - C) / std::max(1.0, std::fabs(C));
      const double return_gap =
          std::fabs(pop.expected_return.dot(w) / nn - R) / std::max(1.0, std::fabs(R));
      if (cost_gap > 1e-8 || return_gap > 1e-8) {
        throw CollinearConstraintsError("constraint residuals " + std::to_string(cost_gap) +
                                        ", " + std::to_string(return_gap) + " at R = " +
                                        std::to_string(R));
      }

      pt.sharpe = (R - C) / std::sqrt(2.0 * pt.risk_per_asset);
      result.points.push_back(pt);
    }
    result.moments = population_moments(pop);
    return result;
  } catch (const SingularMatrixError& e) {
    throw SingularMatrixError(tag + e.what());
  } catch (const CollinearConstraintsError& e) {
    throw CollinearConstraintsError(tag + e.what());
  }
}

std::vector<TrialOutcome> run_trials(const ScenarioConfig& cfg, int n_threads) {
  cfg.validate();
  const int n_trials = cfg.n_trials;
  if (n_threads <= 0) {
    n_threads = static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads <= 0) n_threads = 1;
  }
  n_threads = std::min(n_threads, n_trials);

  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(n_trials));
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int idx = next.fetch_add(1);
      if (idx >= n_trials) return;
      try {
        outcomes[static_cast<std::size_t>(idx)] = run_trial(cfg, idx);
      } catch (const std::exception& e) {
        outcomes[static_cast<std::size_t>(idx)] = TrialFailure{idx, e.what()};
      }
    }
  };

  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return outcomes;
}

AggregateResult aggregate_trials(const std::vector<TrialOutcome>& outcomes,
                                 const ScenarioConfig& cfg, MomentsMode mode) {
  cfg.validate();
  std::vector<const TrialResult*> ok;
  int n_failed = 0;
  for (const TrialOutcome& o : outcomes) {
    if (const TrialResult* r = std::get_if<TrialResult>(&o)) {
      ok.push_back(r);
    } else {
      ++n_failed;
    }
  }
  const int n_total = static_cast<int>(outcomes.size());
  if (10 * n_failed > n_total) {
    std::string first;
    for (const TrialOutcome& o : outcomes) {
      if (const TrialFailure* f = std::get_if<TrialFailure>(&o)) {
        first = f->message;
        break;
      }
    }
    throw ExperimentFailedError(std::to_string(n_failed) + " of " + std::to_string(n_total) +
                                " trials failed (limit 10%); first failure: " + first);
  }
  if (ok.size() < 2) {
    throw ExperimentFailedError("need at least two successful trials to estimate errors, got " +
                                std::to_string(ok.size()));
  }

  AggregateResult agg;
  agg.n_trials_requested = n_total;
  agg.n_trials_succeeded = static_cast<int>(ok.size());
  agg.n_trials_failed = n_failed;
  agg.moments_mode = mode;
  agg.alpha = cfg.period_ratio();
  agg.cost_coefficient = cfg.cost_coefficient;

  if (mode == MomentsMode::Analytic) {
    agg.prediction_moments = analytic_population_moments(cfg.pareto_r, cfg.pareto_h);
  } else {
    PopulationMoments sum;
    for (const TrialResult* r : ok) {
      sum.m_cc += r->moments.m_cc;
      sum.m_rc += r->moments.m_rc;
      sum.m_rr += r->moments.m_rr;
      sum.mean_log_v += r->moments.mean_log_v;
    }
    const double k = static_cast<double>(ok.size());
    agg.prediction_moments = {sum.m_cc / k, sum.m_rc / k, sum.m_rr / k, sum.mean_log_v / k};
  }

  const std::size_t n_points = cfg.return_grid.size();
  agg.points.resize(n_points);
  std::vector<double> eps_values(ok.size()), sharpe_values(ok.size());
  for (std::size_t jpt = 0; jpt < n_points; ++jpt) {
    for (std::size_t t = 0; t < ok.size(); ++t) {
      eps_values[t] = ok[t]->points[jpt].risk_per_asset;
      sharpe_values[t] = ok[t]->points[jpt].sharpe;
    }
    ReturnPointStats& st = agg.points[jpt];
    st.return_coefficient = cfg.return_grid[jpt];
    const MeanStderr eps = mean_and_stderr(eps_values);
    const MeanStderr sh = mean_and_stderr(sharpe_values);
    st.mean_epsilon = eps.mean;
    st.stderr_epsilon = eps.stderr_value;
    st.mean_sharpe = sh.mean;
    st.stderr_sharpe = sh.stderr_value;
    st.predicted_epsilon =
        quenched_risk(agg.prediction_moments, agg.alpha, agg.cost_coefficient, st.return_coefficient)
            .risk_per_asset;
    st.predicted_sharpe = (st.return_coefficient - agg.cost_coefficient) /
                          std::sqrt(2.0 * st.predicted_epsilon);
  }

  agg.vertex_risk = cost_only_risk(agg.prediction_moments, agg.alpha, agg.cost_coefficient);
  try {
    const SharpeGeometry g =
        sharpe_geometry(agg.prediction_moments, agg.alpha, agg.cost_coefficient);
    agg.max_sharpe = std::sqrt(g.s2_max);
  } catch (const VertexAtOriginError&) {
    agg.max_sharpe = std::numeric_limits<double>::quiet_NaN();
  }
  return agg;
}

AggregateResult run_experiment(const ScenarioConfig& cfg, const ExperimentOptions& opts) {
  cfg.validate();
  if (cfg.n_trials < 2) {
    throw InvalidSpecError("an experiment needs n_trials >= 2");
  }
  const std::vector<TrialOutcome> outcomes = run_trials(cfg, opts.n_threads);
  return aggregate_trials(outcomes, cfg, opts.moments_mode);
}

ComparisonReport compare_report(const AggregateResult& agg) {
  ComparisonReport rep;
  rep.points.reserve(agg.points.size());
  bool all_pass = true;
  for (const ReturnPointStats& st : agg.points) {
    PointComparison pc;
    pc.return_coefficient = st.return_coefficient;
    pc.epsilon_sigma = sigma_units(st.mean_epsilon, st.predicted_epsilon, st.stderr_epsilon);
    pc.sharpe_sigma = sigma_units(st.mean_sharpe, st.predicted_sharpe, st.stderr_sharpe);
    pc.deviation_sigma = std::max(pc.epsilon_sigma, pc.sharpe_sigma);
    pc.pass = pc.deviation_sigma < 3.0;
    all_pass = all_pass && pc.pass;
    rep.points.push_back(pc);
  }
  rep.consistent = all_pass && !agg.points.empty();

  const DerivedCoefficients d =
      derived_coefficients(agg.prediction_moments, agg.cost_coefficient, 0.0);
  std::size_t vertex_idx = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t jpt = 0; jpt < agg.points.size(); ++jpt) {
    const double gap = std::fabs(agg.points[jpt].return_coefficient - d.r0);
    if (gap < best) {
      best = gap;
      vertex_idx = jpt;
    }
  }
  rep.vertex_return = agg.points[vertex_idx].return_coefficient;
  const AnnealedComparison ann = annealed_comparison(
      agg.prediction_moments, agg.alpha, agg.cost_coefficient, rep.vertex_return);
  rep.kappa_hat = ann.annealed_risk / agg.points[vertex_idx].mean_epsilon;
  rep.kappa_expected = agg.alpha / (agg.alpha - 1.0);
  return rep;
}

}  // namespace riskmin
