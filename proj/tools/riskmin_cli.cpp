// Command line front end: predicts closed-form risk curves, solves single
// draws exactly, and runs Monte Carlo scans that cross-validate the two.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "riskmin/commands.hpp"

namespace {

struct RawArgs {
  std::string moments = "empirical";
  std::uint64_t seed = 0;
  double return_coefficient = 0.0;
  std::string portfolio_path;
};

void add_common(CLI::App* sub, riskmin::CliOptions& opts, RawArgs& raw) {
  sub->add_option("--config", opts.config_path, "scenario config file (key=value)")->required();
  sub->add_option("--out", opts.output_path, "output CSV path")->required();
  sub->add_option("--seed", raw.seed, "override master_seed from the config");
  sub->add_option("--moments", raw.moments, "moments feeding the prediction lines")
      ->check(CLI::IsMember({"analytic", "empirical"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quenched investment-risk minimization: closed-form predictions and exact solves"};
  app.require_subcommand(1);

  riskmin::CliOptions opts;
  RawArgs raw;

  CLI::App* predict = app.add_subcommand("predict", "closed-form risk and Sharpe table");
  add_common(predict, opts, raw);

  CLI::App* solve = app.add_subcommand("solve", "exact optimum of a single deterministic draw");
  add_common(solve, opts, raw);
  solve->add_option("--return", raw.return_coefficient,
                    "return level R (default: first grid value)");
  solve->add_option("--portfolio", raw.portfolio_path,
                    "also write per-asset weights to this CSV");

  CLI::App* experiment =
      app.add_subcommand("experiment", "Monte Carlo scan with 3-stderr consistency verdict");
  add_common(experiment, opts, raw);
  experiment->add_flag_callback(
      "--no-verdict-gate", [&opts]() { opts.verdict_gate = false; },
      "exit 0 even when the verdict is inconsistent");
  experiment->add_option("--threads", opts.n_threads,
                         "worker threads (0 = hardware concurrency)");

  CLI11_PARSE(app, argc, argv);

  CLI::App* sub = nullptr;
  if (predict->parsed()) {
    opts.command = riskmin::Command::Predict;
    sub = predict;
  } else if (solve->parsed()) {
    opts.command = riskmin::Command::Solve;
    sub = solve;
  } else {
    opts.command = riskmin::Command::Experiment;
    sub = experiment;
  }
  if (sub->count("--seed") > 0) opts.seed_override = raw.seed;
  if (sub == solve && solve->count("--return") > 0) {
    opts.return_coefficient = raw.return_coefficient;
  }
  if (sub == solve && !raw.portfolio_path.empty()) opts.portfolio_path = raw.portfolio_path;
  opts.moments_mode = raw.moments == "analytic" ? riskmin::MomentsMode::Analytic
                                                : riskmin::MomentsMode::Empirical;

  return riskmin::run_command(opts, std::cerr);
}
