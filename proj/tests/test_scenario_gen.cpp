#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "riskmin/errors.hpp"
#include "riskmin/rng.hpp"
#include "riskmin/scenario_gen.hpp"
#include "support/oracles.hpp"

using namespace riskmin;

namespace {

ParetoSpec reference_pareto() { return ParetoSpec{2.0, 1.0, 2.0}; }

ScenarioConfig small_config() {
  ScenarioConfig cfg;
  cfg.n_assets = 20;
  cfg.n_periods = 50;
  cfg.cost_coefficient = 1.0;
  cfg.return_grid = {1.0, 1.5};
  cfg.pareto_r = reference_pareto();
  cfg.pareto_h = reference_pareto();
  cfg.n_trials = 2;
  cfg.master_seed = 99;
  return cfg;
}

}  // namespace

TEST_CASE("inverse CDF endpoints and the exponent-2 midpoint") {
  const ParetoSpec spec = reference_pareto();
  CHECK(bounded_pareto_icdf(spec, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bounded_pareto_icdf(spec, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
  // 1 / (1/l - u (1/l - 1/u)) at u = 1/2 gives 4/3 for exponent 2 on [1, 2]
  CHECK(bounded_pareto_icdf(spec, 0.5) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("inverse CDF is monotone and stays inside the support") {
  const ParetoSpec spec{2.7, 0.4, 9.0};
  double prev = spec.lower;
  for (int i = 0; i <= 1000; ++i) {
    const double x = bounded_pareto_icdf(spec, i / 1000.0);
    CHECK(x >= prev);
    CHECK(x >= spec.lower);
    CHECK(x <= spec.upper);
    prev = x;
  }
}

TEST_CASE("sampled mean matches 2 ln 2 and draws respect the support") {
  const ParetoSpec spec = reference_pareto();
  Rng rng(2024);
  const int n = 100000;
  double sum = 0.0, sum_sq = 0.0, lo = 10.0, hi = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = sample_bounded_pareto(spec, rng);
    sum += x;
    sum_sq += x * x;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  const double mean = sum / n;
  const double sd = std::sqrt((sum_sq / n - mean * mean) * n / (n - 1.0));
  const double expected = 2.0 * std::log(2.0);
  CHECK(lo >= spec.lower);
  CHECK(hi <= spec.upper);
  CHECK(std::fabs(mean - expected) <= 3.0 * sd / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("sampled quartiles match the law") {
  const ParetoSpec spec = reference_pareto();
  Rng rng(77);
  const int n = 50000;
  const double q25 = bounded_pareto_icdf(spec, 0.25);
  const double q75 = bounded_pareto_icdf(spec, 0.75);
  int below25 = 0, below75 = 0;
  for (int i = 0; i < n; ++i) {
    const double x = sample_bounded_pareto(spec, rng);
    if (x < q25) ++below25;
    if (x < q75) ++below75;
  }
  const double band = 3.0 * std::sqrt(0.25 * 0.75 / n);
  CHECK(std::fabs(below25 / static_cast<double>(n) - 0.25) <= band);
  CHECK(std::fabs(below75 / static_cast<double>(n) - 0.75) <= band);
}

TEST_CASE("analytic Pareto means: hand values for exponent 2 on [1, 2]") {
  const ParetoSpec spec = reference_pareto();
  CHECK(analytic_pareto_mean(spec, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(analytic_pareto_mean(spec, 1) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-14));
  CHECK(analytic_pareto_mean(spec, 2) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(analytic_pareto_mean(spec, -1) == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("analytic Pareto means agree with quadrature, including the log branch") {
  for (const ParetoSpec spec :
       {ParetoSpec{2.0, 1.0, 2.0}, ParetoSpec{3.0, 0.5, 4.0}, ParetoSpec{1.5, 2.0, 7.0}}) {
    for (int power : {-2, -1, 0, 1, 2, 3}) {
      const double want = oracles::pareto_expectation(
          spec, [power](double x) { return std::pow(x, power); });
      CHECK(analytic_pareto_mean(spec, power) == doctest::Approx(want).epsilon(1e-9));
    }
  }
  // power - exponent + 1 == 0 exercises the logarithmic branch
  const ParetoSpec cubic{3.0, 1.0, 2.0};
  const double want =
      oracles::pareto_expectation(cubic, [](double x) { return x * x; });
  CHECK(analytic_pareto_mean(cubic, 2) == doctest::Approx(want).epsilon(1e-9));
  CHECK(analytic_pareto_mean(cubic, 2) ==
        doctest::Approx((8.0 / 3.0) * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("analytic log mean agrees with quadrature") {
  for (const ParetoSpec spec :
       {ParetoSpec{2.0, 1.0, 2.0}, ParetoSpec{3.0, 0.5, 4.0}, ParetoSpec{0.5, 1.0, 3.0}}) {
    const double want =
        oracles::pareto_expectation(spec, [](double x) { return std::log(x); });
    CHECK(analytic_pareto_log_mean(spec) == doctest::Approx(want).epsilon(1e-9));
  }
  CHECK(analytic_pareto_log_mean(reference_pareto()) ==
        doctest::Approx(0.30685281944005469).epsilon(1e-14));
}

TEST_CASE("analytic population moments reduce to E[1/h] times (1/3, 1/2, 1)") {
  const PopulationMoments m = analytic_population_moments(reference_pareto(), reference_pareto());
  CHECK(m.m_cc == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(m.m_rc == doctest::Approx(0.375).epsilon(1e-14));
  CHECK(m.m_rr == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(m.mean_log_v == doctest::Approx(3.0 * 0.30685281944005469).epsilon(1e-12));
}

TEST_CASE("assembled population applies v = h r^2 and c = r z") {
  Eigen::Vector2d r(2.0, 3.0), h(0.5, 2.0), z(0.25, 1.0);
  const AssetPopulation pop = assemble_population(r, h, z);
  CHECK(pop.variance[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(pop.variance[1] == doctest::Approx(18.0).epsilon(1e-15));
  CHECK(pop.unit_cost[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(pop.unit_cost[1] == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(pop.expected_return[0] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("population generation is bit-reproducible per seed and trial") {
  const ScenarioConfig cfg = small_config();
  Rng a(trial_seed(cfg.master_seed, 3));
  Rng b(trial_seed(cfg.master_seed, 3));
  Rng c(trial_seed(cfg.master_seed, 4));
  const AssetPopulation pa = generate_population(cfg, a);
  const AssetPopulation pb = generate_population(cfg, b);
  const AssetPopulation pc = generate_population(cfg, c);
  CHECK(pa.expected_return == pb.expected_return);
  CHECK(pa.unit_cost == pb.unit_cost);
  CHECK(pa.variance == pb.variance);
  CHECK(pa.expected_return != pc.expected_return);
}

TEST_CASE("generated population entries respect their construction ranges") {
  const ScenarioConfig cfg = small_config();
  Rng rng(trial_seed(cfg.master_seed, 0));
  const AssetPopulation pop = generate_population(cfg, rng);
  for (Eigen::Index i = 0; i < pop.n_assets(); ++i) {
    const double r = pop.expected_return[i];
    CHECK(r >= 1.0);
    CHECK(r <= 2.0);
    // v = h r^2 with h in [1, 2]
    CHECK(pop.variance[i] >= r * r);
    CHECK(pop.variance[i] <= 2.0 * r * r);
    // c = r z with z in [0, 1)
    CHECK(pop.unit_cost[i] >= 0.0);
    CHECK(pop.unit_cost[i] < r);
  }
}

TEST_CASE("returns matrix rows carry variance v_i / N at p = 2000") {
  ScenarioConfig cfg = small_config();
  cfg.n_assets = 6;
  Rng rng(trial_seed(42, 0));
  const AssetPopulation pop = generate_population(cfg, rng);
  const int p = 2000;
  const ReturnsMatrix x = generate_returns(pop, p, rng);
  REQUIRE(x.entries.rows() == 6);
  REQUIRE(x.entries.cols() == p);
  const double n = 6.0;
  for (Eigen::Index i = 0; i < 6; ++i) {
    const double sample_var = n * x.entries.row(i).squaredNorm() / p;
    CHECK(sample_var == doctest::Approx(pop.variance[i]).epsilon(0.05));
  }
}

TEST_CASE("wishart of a hand-built returns matrix") {
  ReturnsMatrix x;
  x.entries.resize(2, 3);
  const double s = 1.0 / std::sqrt(2.0);
  x.entries << s, 0.0, s, 0.0, s, s;
  const WishartMatrix j = wishart(x);
  CHECK(j.entries(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(j.entries(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(j.entries(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(j.entries(1, 0) == doctest::Approx(0.5).epsilon(1e-15));

  x.entries.setZero();
  CHECK(wishart(x).entries.isZero(0.0));
}

TEST_CASE("wishart draws are exactly symmetric and positive definite") {
  ScenarioConfig cfg = small_config();
  cfg.n_assets = 50;
  cfg.n_periods = 100;
  for (int rep = 0; rep < 20; ++rep) {
    Rng rng(trial_seed(7, static_cast<std::uint64_t>(rep)));
    const AssetPopulation pop = generate_population(cfg, rng);
    const ReturnsMatrix x = generate_returns(pop, cfg.n_periods, rng);
    const WishartMatrix j = wishart(x);
    CHECK(j.entries == j.entries.transpose().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j.entries);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("wishart diagonal concentrates on alpha v_i") {
  ScenarioConfig cfg = small_config();
  cfg.n_assets = 100;
  cfg.n_periods = 400;
  Rng rng(trial_seed(8, 0));
  const AssetPopulation pop = generate_population(cfg, rng);
  const ReturnsMatrix x = generate_returns(pop, cfg.n_periods, rng);
  const WishartMatrix j = wishart(x);
  // J_ii = (1/N) sum_mu (x - r)^2 ~ alpha v_i with relative sd sqrt(2/p) ~ 7%
  double ratio = 0.0;
  for (Eigen::Index i = 0; i < 100; ++i) {
    ratio += j.entries(i, i) / pop.variance[i];
  }
  ratio /= 100.0;
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("pareto and scenario validation reject out-of-contract parameters") {
  CHECK_THROWS_AS((ParetoSpec{1.0, 1.0, 2.0}.validate()), InvalidSpecError);
  CHECK_THROWS_AS((ParetoSpec{1.0 + 5e-10, 1.0, 2.0}.validate()), InvalidSpecError);
  CHECK_THROWS_AS((ParetoSpec{2.0, 0.0, 2.0}.validate()), InvalidSpecError);
  CHECK_THROWS_AS((ParetoSpec{2.0, -1.0, 2.0}.validate()), InvalidSpecError);
  CHECK_THROWS_AS((ParetoSpec{2.0, 2.0, 2.0}.validate()), InvalidSpecError);
  CHECK_THROWS_AS((ParetoSpec{2.0, 3.0, 2.0}.validate()), InvalidSpecError);
  CHECK_NOTHROW(reference_pareto().validate());

  ScenarioConfig cfg = small_config();
  cfg.n_periods = cfg.n_assets;
  CHECK_THROWS_AS(cfg.validate(), InvalidSpecError);

  cfg = small_config();
  cfg.return_grid = {1.5, 1.0};
  CHECK_THROWS_AS(cfg.validate(), InvalidSpecError);

  cfg = small_config();
  cfg.return_grid = {1.0, 1.0};
  CHECK_THROWS_AS(cfg.validate(), InvalidSpecError);

  cfg = small_config();
  cfg.return_grid.clear();
  CHECK_THROWS_AS(cfg.validate(), InvalidSpecError);

  cfg = small_config();
  cfg.n_trials = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidSpecError);

  CHECK_NOTHROW(small_config().validate());
}

TEST_CASE("generate_returns requires more periods than assets") {
  const ScenarioConfig cfg = small_config();
  Rng rng(1);
  const AssetPopulation pop = generate_population(cfg, rng);
  CHECK_THROWS_AS(generate_returns(pop, 20, rng), InvalidSpecError);
  CHECK_NOTHROW(generate_returns(pop, 21, rng));
}
