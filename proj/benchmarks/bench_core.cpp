#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "riskmin/exact_solver.hpp"
#include "riskmin/experiment.hpp"
#include "riskmin/rng.hpp"
#include "riskmin/scenario_gen.hpp"

using namespace riskmin;

namespace {

ScenarioConfig bench_config(int n) {
  ScenarioConfig cfg;
  cfg.n_assets = n;
  cfg.n_periods = 2 * n;
  cfg.cost_coefficient = 1.0;
  cfg.return_grid = {1.0, 1.2, 1.4, 1.6, 1.8, 2.0};
  cfg.pareto_r = {2.0, 1.0, 2.0};
  cfg.pareto_h = {2.0, 1.0, 2.0};
  cfg.n_trials = 2;
  cfg.master_seed = 12345;
  return cfg;
}

void BM_pareto_sampling(benchmark::State& state) {
  const ParetoSpec spec{2.0, 1.0, 2.0};
  Rng rng(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_bounded_pareto(spec, rng));
  }
}
BENCHMARK(BM_pareto_sampling);

void BM_wishart_build(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ScenarioConfig cfg = bench_config(n);
  Rng rng(trial_seed(cfg.master_seed, 0));
  const AssetPopulation pop = generate_population(cfg, rng);
  const ReturnsMatrix x = generate_returns(pop, cfg.n_periods, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wishart(x).entries.norm());
  }
}
BENCHMARK(BM_wishart_build)->Arg(100)->Arg(300)->Arg(500);

void BM_factor_and_solve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ScenarioConfig cfg = bench_config(n);
  Rng rng(trial_seed(cfg.master_seed, 0));
  const AssetPopulation pop = generate_population(cfg, rng);
  const WishartMatrix j = wishart(generate_returns(pop, cfg.n_periods, rng));
  ProblemSpec spec;
  spec.cost_coefficient = 1.0;
  spec.return_coefficient = 1.5;
  spec.n_assets = n;
  spec.n_periods = cfg.n_periods;
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimal_portfolio(j, pop, spec).risk_per_asset);
  }
}
BENCHMARK(BM_factor_and_solve)->Arg(100)->Arg(300)->Arg(500);

void BM_full_trial(benchmark::State& state) {
  const ScenarioConfig cfg = bench_config(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_trial(cfg, 0).points.back().risk_per_asset);
  }
}
BENCHMARK(BM_full_trial)->Arg(100)->Arg(300);

}  // namespace

BENCHMARK_MAIN();
