#include "riskmin/commands.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "riskmin/config.hpp"
#include "riskmin/csv.hpp"
#include "riskmin/errors.hpp"
#include "riskmin/replica_predictor.hpp"
#include "riskmin/rng.hpp"

namespace riskmin {

namespace {

const char* mode_name(MomentsMode mode) {
  return mode == MomentsMode::Analytic ? "analytic" : "empirical";
}

ScenarioConfig load_config(const CliOptions& opts) {
  ScenarioConfig cfg = parse_config(opts.config_path);
  if (opts.seed_override) cfg.master_seed = *opts.seed_override;
  return cfg;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot open output file '" + path.string() + "'");
  }
  return out;
}

void comment_row(CsvWriter& w, const std::string& key, const std::string& value) {
  w.cell("# " + key).cell(value).endrow();
}

void comment_row(CsvWriter& w, const std::string& key, double value) {
  w.cell("# " + key).cell(value).endrow();
}

void comment_row(CsvWriter& w, const std::string& key, std::int64_t value) {
  w.cell("# " + key).cell(value).endrow();
}

// Population whose moments feed predict in empirical mode: the same bytes as
// experiment trial 0 under the same seed.
PopulationMoments empirical_moments(const ScenarioConfig& cfg) {
  Rng rng(trial_seed(cfg.master_seed, 0));
  return population_moments(generate_population(cfg, rng));
}

}  // namespace

void write_predict_csv(std::ostream& out, const PopulationMoments& m, double alpha, double C,
                       const std::vector<double>& return_grid, MomentsMode mode) {
  CsvWriter w(out);
  comment_row(w, "alpha", alpha);
  comment_row(w, "cost_coefficient", C);
  comment_row(w, "moments_mode", mode_name(mode));
  comment_row(w, "m_cc", m.m_cc);
  comment_row(w, "m_rc", m.m_rc);
  comment_row(w, "m_rr", m.m_rr);
  comment_row(w, "mean_log_v", m.mean_log_v);

  const DerivedCoefficients d = derived_coefficients(m, C, 0.0);
  comment_row(w, "R0", d.r0);
  comment_row(w, "V", d.v_big);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  double r_star = nan, s2_max = nan, s2_min_pt = nan, s2_max_pt = nan, pyth = nan;
  try {
    const SharpeGeometry g = sharpe_geometry(m, alpha, C);
    r_star = g.argmax;
    s2_max = g.s2_max;
    s2_min_pt = g.s2_at_risk_min;
    s2_max_pt = g.s2_at_risk_max;
    pyth = g.pythagorean_residual;
  } catch (const VertexAtOriginError&) {
    // header rows stay NaN; the per-row table below is still well defined
  }
  comment_row(w, "R_star", r_star);
  comment_row(w, "S2_max", s2_max);
  comment_row(w, "S2_min_point", s2_min_pt);
  comment_row(w, "S2_max_point", s2_max_pt);
  comment_row(w, "pythagorean_residual", pyth);

  w.cell("R")
      .cell("predicted_epsilon")
      .cell("predicted_sharpe")
      .cell("annealed_epsilon")
      .cell("kappa");
  w.endrow();
  for (double R : return_grid) {
    const double eps = quenched_risk(m, alpha, C, R).risk_per_asset;
    const double sharpe = (R - C) / std::sqrt(2.0 * eps);
    const AnnealedComparison ann = annealed_comparison(m, alpha, C, R);
    w.cell(R).cell(eps).cell(sharpe).cell(ann.annealed_risk).cell(ann.kappa).endrow();
  }
}

void write_experiment_csv(std::ostream& out, const AggregateResult& agg,
                          const ComparisonReport& rep) {
  CsvWriter w(out);
  w.cell("R")
      .cell("mean_epsilon")
      .cell("stderr_epsilon")
      .cell("mean_sharpe")
      .cell("stderr_sharpe")
      .cell("predicted_epsilon")
      .cell("predicted_sharpe")
      .cell("deviation_sigma");
  w.endrow();
  for (std::size_t j = 0; j < agg.points.size(); ++j) {
    const ReturnPointStats& st = agg.points[j];
    w.cell(st.return_coefficient)
        .cell(st.mean_epsilon)
        .cell(st.stderr_epsilon)
        .cell(st.mean_sharpe)
        .cell(st.stderr_sharpe)
        .cell(st.predicted_epsilon)
        .cell(st.predicted_sharpe)
        .cell(rep.points[j].deviation_sigma);
    w.endrow();
  }
  comment_row(w, "vertex_risk", agg.vertex_risk);
  comment_row(w, "max_sharpe", agg.max_sharpe);
  comment_row(w, "vertex_return_grid", rep.vertex_return);
  comment_row(w, "kappa_hat", rep.kappa_hat);
  comment_row(w, "kappa_expected", rep.kappa_expected);
  comment_row(w, "n_trials_requested", std::int64_t{agg.n_trials_requested});
  comment_row(w, "n_trials_succeeded", std::int64_t{agg.n_trials_succeeded});
  comment_row(w, "n_trials_failed", std::int64_t{agg.n_trials_failed});
  comment_row(w, "moments_mode", mode_name(agg.moments_mode));
  comment_row(w, "verdict", rep.consistent ? "consistent" : "inconsistent");
}

void cmd_predict(const CliOptions& opts) {
  const ScenarioConfig cfg = load_config(opts);
  const PopulationMoments m = opts.moments_mode == MomentsMode::Analytic
                                  ? analytic_population_moments(cfg.pareto_r, cfg.pareto_h)
                                  : empirical_moments(cfg);
  std::ofstream out = open_output(opts.output_path);
  write_predict_csv(out, m, cfg.period_ratio(), cfg.cost_coefficient, cfg.return_grid,
                    opts.moments_mode);
}

void cmd_solve(const CliOptions& opts) {
  const ScenarioConfig cfg = load_config(opts);
  const double R = opts.return_coefficient.value_or(cfg.return_grid.front());

  Rng rng(trial_seed(cfg.master_seed, 0));
  const AssetPopulation pop = generate_population(cfg, rng);
  const ReturnsMatrix x = generate_returns(pop, cfg.n_periods, rng);
  const WishartMatrix j = wishart(x);

  ProblemSpec spec;
  spec.cost_coefficient = cfg.cost_coefficient;
  spec.return_coefficient = R;
  spec.n_assets = cfg.n_assets;
  spec.n_periods = cfg.n_periods;
  const OptimalSolution sol = optimal_portfolio(j, pop, spec);
  const QuadraticForms forms = quadratic_forms(j, pop);

  std::ofstream out = open_output(opts.output_path);
  CsvWriter w(out);
  comment_row(w, "n_assets", std::int64_t{cfg.n_assets});
  comment_row(w, "n_periods", std::int64_t{cfg.n_periods});
  comment_row(w, "a", forms.a);
  comment_row(w, "b", forms.b);
  comment_row(w, "d", forms.d);
  if (!sol.warning.empty()) {
    // semicolons, not commas, inside the message; stays one comment cell
    comment_row(w, "warning", sol.warning);
  }
  w.cell("R")
      .cell("C")
      .cell("epsilon")
      .cell("sharpe")
      .cell("k_star")
      .cell("theta_star")
      .cell("achieved_cost")
      .cell("achieved_return");
  w.endrow();
  const double sharpe = sol.risk_per_asset > 0.0
                            ? sharpe_ratio(R, cfg.cost_coefficient, sol.risk_per_asset)
                            : std::numeric_limits<double>::quiet_NaN();
  w.cell(R)
      .cell(cfg.cost_coefficient)
      .cell(sol.risk_per_asset)
      .cell(sharpe)
      .cell(sol.k_star)
      .cell(sol.theta_star)
      .cell(sol.achieved_cost)
      .cell(sol.achieved_return);
  w.endrow();

  if (opts.portfolio_path) {
    std::ofstream pout = open_output(*opts.portfolio_path);
    CsvWriter pw(pout);
    pw.cell("index").cell("weight").endrow();
    for (Eigen::Index i = 0; i < sol.portfolio.size(); ++i) {
      pw.cell(std::int64_t{i}).cell(sol.portfolio[i]).endrow();
    }
  }
}

ComparisonReport cmd_experiment(const CliOptions& opts) {
  const ScenarioConfig cfg = load_config(opts);
  ExperimentOptions eopts;
  eopts.n_threads = opts.n_threads;
  eopts.moments_mode = opts.moments_mode;
  const AggregateResult agg = run_experiment(cfg, eopts);
  const ComparisonReport rep = compare_report(agg);
  std::ofstream out = open_output(opts.output_path);
  write_experiment_csv(out, agg, rep);
  return rep;
}

int run_command(const CliOptions& opts, std::ostream& diag) {
  try {
    switch (opts.command) {
      case Command::Predict:
        cmd_predict(opts);
        return kExitOk;
      case Command::Solve:
        cmd_solve(opts);
        return kExitOk;
      case Command::Experiment: {
        const ComparisonReport rep = cmd_experiment(opts);
        if (!rep.consistent) {
          diag << "verdict: inconsistent (some grid point deviates by 3 stderr or more)\n";
          return opts.verdict_gate ? kExitInconsistent : kExitOk;
        }
        return kExitOk;
      }
    }
    return kExitCompute;
  } catch (const ConfigError& e) {
    diag << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidSpecError& e) {
    diag << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    diag << "error: " << e.what() << '\n';
    return kExitCompute;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << '\n';
    return kExitCompute;
  }
}

}  // namespace riskmin
