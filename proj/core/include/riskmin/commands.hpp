#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>

#include "riskmin/experiment.hpp"

namespace riskmin {

enum class Command { Predict, Solve, Experiment };

struct CliOptions {
  Command command = Command::Predict;
  std::filesystem::path config_path;
  std::filesystem::path output_path;
  std::optional<std::uint64_t> seed_override;  // replaces master_seed
  MomentsMode moments_mode = MomentsMode::Empirical;
  bool verdict_gate = true;  // experiment: nonzero exit on inconsistent verdict
  int n_threads = 0;         // experiment: 0 = hardware concurrency
  std::optional<double> return_coefficient;              // solve: default grid front
  std::optional<std::filesystem::path> portfolio_path;   // solve: per-asset weights
};

// Exit codes of the command layer.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInconsistent = 1;  // experiment verdict failed the 3-sigma gate
inline constexpr int kExitConfig = 2;        // config unreadable or invalid
inline constexpr int kExitCompute = 3;       // numerical or runtime failure

// Closed-form prediction table: '#'-prefixed header block (moments, parabola
// landmarks, Sharpe geometry), then one row per grid return level with the
// quenched risk, Sharpe, annealed risk, and their ratio.
void write_predict_csv(std::ostream& out, const PopulationMoments& m, double alpha, double C,
                       const std::vector<double>& return_grid, MomentsMode mode);

// Scan results: one row per grid level matching the report, then a '#'-prefixed
// summary block (vertex and max-Sharpe prediction lines, kappa, counts, verdict).
void write_experiment_csv(std::ostream& out, const AggregateResult& agg,
                          const ComparisonReport& rep);

// Throwing command bodies. cmd_experiment returns the report so callers can
// gate on the verdict.
void cmd_predict(const CliOptions& opts);
void cmd_solve(const CliOptions& opts);
ComparisonReport cmd_experiment(const CliOptions& opts);

// Runs one command, catches library errors, writes the message to diag, and
// maps the outcome onto the exit codes above.
int run_command(const CliOptions& opts, std::ostream& diag);

}  // namespace riskmin
