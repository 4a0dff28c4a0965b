#pragma once

#include <string>
#include <variant>
#include <vector>

#include "riskmin/exact_solver.hpp"
#include "riskmin/market_model.hpp"
#include "riskmin/scenario_gen.hpp"

namespace riskmin {

// Exact minimal risk and Sharpe ratio of one draw at one grid return level.
struct TrialPoint {
  double return_coefficient = 0.0;
  double risk_per_asset = 0.0;
  double sharpe = 0.0;
};

struct TrialResult {
  int trial_index = -1;
  PopulationMoments moments;  // finite-N moments of the drawn population
  QuadraticForms forms;
  std::vector<TrialPoint> points;  // one per grid entry, grid order
};

struct TrialFailure {
  int trial_index = -1;
  std::string message;
};

using TrialOutcome = std::variant<TrialResult, TrialFailure>;

// Which moments feed the closed-form prediction lines: the trial-averaged
// moments of the drawn populations, or the distribution-level moments.
enum class MomentsMode { Empirical, Analytic };

struct ReturnPointStats {
  double return_coefficient = 0.0;
  double mean_epsilon = 0.0;
  double stderr_epsilon = 0.0;  // sample sd (n-1) / sqrt(n_succeeded)
  double mean_sharpe = 0.0;
  double stderr_sharpe = 0.0;
  double predicted_epsilon = 0.0;
  double predicted_sharpe = 0.0;
};

struct AggregateResult {
  std::vector<ReturnPointStats> points;
  int n_trials_requested = 0;
  int n_trials_succeeded = 0;
  int n_trials_failed = 0;
  PopulationMoments prediction_moments;
  MomentsMode moments_mode = MomentsMode::Empirical;
  double alpha = 0.0;
  double cost_coefficient = 0.0;
  double vertex_risk = 0.0;   // predicted risk at the parabola vertex
  double max_sharpe = 0.0;    // predicted Sharpe at its argmax (NaN if undefined)
};

struct PointComparison {
  double return_coefficient = 0.0;
  double epsilon_sigma = 0.0;  // |mean - predicted| in stderr units
  double sharpe_sigma = 0.0;
  double deviation_sigma = 0.0;  // max of the two; 0/0 counts as 0
  bool pass = false;             // deviation_sigma < 3
};

struct ComparisonReport {
  std::vector<PointComparison> points;
  bool consistent = false;  // every point passes
  double vertex_return = 0.0;   // grid point nearest the predicted vertex
  double kappa_hat = 0.0;       // annealed prediction / empirical mean at the vertex point
  double kappa_expected = 0.0;  // alpha / (alpha - 1)
};

// One full draw-solve-scan cycle on the trial's own deterministic stream:
// population, returns matrix, Wishart, one factorization, then every grid
// level via the shared quadratic forms. Feasibility of each implied portfolio
// is checked internally at 1e-8. Errors propagate tagged with the trial index.
TrialResult run_trial(const ScenarioConfig& cfg, int trial_index);

// Runs all trials on n_threads workers (0 = hardware concurrency). Outcomes
// come back in trial order regardless of scheduling; per-trial errors are
// captured, not thrown.
std::vector<TrialOutcome> run_trials(const ScenarioConfig& cfg, int n_threads = 0);

// Means, stderrs, and prediction lines across the successful trials. Throws
// ExperimentFailedError when failures exceed 10% of n_trials or fewer than two
// trials succeeded.
AggregateResult aggregate_trials(const std::vector<TrialOutcome>& outcomes,
                                 const ScenarioConfig& cfg,
                                 MomentsMode mode = MomentsMode::Empirical);

struct ExperimentOptions {
  int n_threads = 0;  // 0 = hardware concurrency
  MomentsMode moments_mode = MomentsMode::Empirical;
};

AggregateResult run_experiment(const ScenarioConfig& cfg, const ExperimentOptions& opts = {});

// Three-stderr consistency verdict plus the annealed/quenched ratio measured
// at the grid point nearest the predicted vertex.
ComparisonReport compare_report(const AggregateResult& agg);

}  // namespace riskmin
