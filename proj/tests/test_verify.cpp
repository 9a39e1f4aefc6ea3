#include <cmath>
#include <vector>

#include "doctest.h"
#include "heavytail/errors.hpp"
#include "heavytail/stats.hpp"
#include "heavytail/verify.hpp"
#include "oracles.hpp"

using namespace heavytail;

namespace {

ExperimentConfig iid_config(std::size_t n, std::size_t p, std::size_t reps,
                            std::uint64_t seed, std::size_t k = 2) {
  ExperimentConfig cfg;
  cfg.process = ProcessSpec::iid(TailLaw{1.0, 1.0, 1.0});
  cfg.alpha = 1.0;
  cfg.n = n;
  cfg.growth = GrowthExplicit{p};
  cfg.k = k;
  cfg.reps = reps;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("growth rule resolves the dimension") {
  CHECK(resolve_dimension(GrowthExplicit{123}, 10) == 123);
  CHECK(resolve_dimension(GrowthBeta{0.5}, 100) == 10);
  CHECK(resolve_dimension(GrowthKappa{1.5}, 50) == 354);
  CHECK(resolve_dimension(GrowthBeta{0.1}, 2) == 1);
}

TEST_CASE("growth validation mirrors the regime hypotheses") {
  // bound at alpha = 1.5 is (2-1.5)/(1.5-1) = 1
  CHECK(validate_growth(1.5, GrowthBeta{0.9}).ok);
  CHECK_FALSE(validate_growth(1.5, GrowthBeta{1.2}).ok);
  CHECK_FALSE(validate_growth(1.5, GrowthBeta{1.0}).ok);
  // no restriction below alpha = 1
  CHECK(validate_growth(0.8, GrowthBeta{5.0}).ok);
  CHECK(validate_growth(0.8, GrowthKappa{1.0}).ok);
  CHECK_FALSE(validate_growth(0.8, GrowthKappa{0.7}).ok);
  CHECK(validate_growth(1.9, GrowthExplicit{100}).ok);
  CHECK_THROWS_AS(validate_growth(2.5, GrowthBeta{0.5}), ParameterError);
}

TEST_CASE("ks distance textbook cases") {
  // single point at the median
  const std::vector<double> one = {0.0};
  CHECK(ks_distance(one, [](double x) { return x < 0 ? 0.25 : 0.5; }) ==
        doctest::Approx(0.5).epsilon(1e-12));
  // constant sample below the support: F(c) = 0, distance 1
  const std::vector<double> constant(100, -5.0);
  CHECK(ks_distance(constant, [](double x) {
          return x < 0.0 ? 0.0 : 1.0;
        }) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(ks_distance({}, [](double) { return 0.5; }),
                  ParameterError);
}

TEST_CASE("ks distance matches an independent reimplementation") {
  Rng rng(31);
  std::vector<double> sample(257);
  for (auto& s : sample) s = rng.normal();
  const auto cdf = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
  CHECK(ks_distance(sample, cdf) ==
        doctest::Approx(oracles::ks_reference(sample, cdf)).epsilon(1e-12));
}

TEST_CASE("ks of a true-cdf sample sits inside the 99% Kolmogorov band") {
  // oracle: the Kolmogorov quantile at 99% is about 1.6276
  const double q99 = oracles::kolmogorov_quantile(0.99);
  CHECK(q99 == doctest::Approx(1.6276).epsilon(1e-3));
  std::mt19937_64 eng(32);
  std::vector<double> sample(10000);
  for (auto& s : sample) s = oracles::uniform01(eng);
  const double ks = ks_distance(
      sample, [](double x) { return std::clamp(x, 0.0, 1.0); });
  CHECK(ks <= q99 / std::sqrt(10000.0));
}

TEST_CASE("config validation and the KS rep minimum") {
  ExperimentConfig cfg = iid_config(50, 50, 10, 1);
  CHECK_THROWS_AS(run_experiment(cfg), ParameterError);  // reps < 30
  cfg.reps = 0;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
  cfg.reps = 100;
  cfg.alpha = 2.5;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
}

TEST_CASE("experiment report is deterministic given config and seed") {
  const ExperimentConfig cfg = iid_config(30, 30, 40, 77);
  setenv("HEAVYTAIL_THREADS", "1", 1);
  const VerificationReport a = run_experiment(cfg);
  setenv("HEAVYTAIL_THREADS", "8", 1);
  const VerificationReport b = run_experiment(cfg);
  unsetenv("HEAVYTAIL_THREADS");
  CHECK(a.ks_largest == b.ks_largest);
  CHECK(a.ks_uniform_spacing == b.ks_uniform_spacing);
  CHECK(a.ratio_max_diag.median == b.ratio_max_diag.median);
  CHECK(a.ecdf_points == b.ecdf_points);
}

TEST_CASE("iid experiment at desk scale passes the 0.08 tolerances") {
  const ExperimentConfig cfg = iid_config(100, 100, 1000, 1);
  const VerificationReport rep = run_experiment(cfg);
  CHECK(rep.ks_largest <= 0.08);
  CHECK(rep.ks_uniform_spacing <= 0.08);
  CHECK(rep.b_used == 1.0);
  CHECK(rep.passed());
}

TEST_CASE("harness self-calibration against direct limit draws") {
  // bypass matrices entirely; guards the harness against its own bugs
  const LimitLaw law{1.0, 1.0};
  Rng rng(21);
  std::vector<double> draws(1000);
  for (std::size_t i = 0; i < draws.size(); ++i) {
    Rng d = rng.fork("draw", i);
    draws[i] = limit_topk_sample(law, 1, d)[0];
  }
  const double ks =
      ks_distance(draws, [&](double x) { return frechet_cdf(law, x); });
  CHECK(ks <= oracles::kolmogorov_quantile(0.99) / std::sqrt(1000.0));
}

TEST_CASE("diag ratio median approaches one as n grows") {
  std::vector<double> medians;
  for (std::size_t n : {50, 100, 200}) {
    ExperimentConfig cfg = iid_config(n, n, 60, 11, 1);
    cfg.process = ProcessSpec::iid(TailLaw{0.8, 1.0, 1.0});
    cfg.alpha = 0.8;
    const auto recs = run_replications(cfg, n);
    std::vector<double> dev;
    for (const auto& r : recs)
      dev.push_back(std::abs(r.lambdas[0] / r.max_row_sum - 1.0));
    medians.push_back(median(dev));
  }
  CHECK(medians[0] < 0.05);
  CHECK(medians[1] < medians[0]);
  CHECK(medians[2] < medians[1]);
}

TEST_CASE("violating the beta bound warns but still runs") {
  ExperimentConfig cfg;
  cfg.process = ProcessSpec::iid(TailLaw{1.5, 1.0, 1.0});
  cfg.alpha = 1.5;
  cfg.n = 40;
  cfg.growth = GrowthBeta{1.5};  // bound is 1.0
  cfg.k = 1;
  cfg.reps = 40;
  cfg.seed = 5;
  const VerificationReport rep = run_experiment(cfg);
  REQUIRE(!rep.warnings.empty());
  CHECK(rep.warnings[0].find("beta") != std::string::npos);
}

TEST_CASE("sv experiment uses the analytic b") {
  ExperimentConfig cfg;
  cfg.process =
      ProcessSpec::sv(TailLaw{1.0, 0.5, 1.0}, ExpGaussianVol{{1.0}, 1.0});
  cfg.alpha = 1.0;
  cfg.n = 30;
  cfg.growth = GrowthExplicit{30};
  cfg.k = 1;
  cfg.reps = 40;
  cfg.seed = 6;
  const VerificationReport rep = run_experiment(cfg);
  CHECK(rep.b_used == doctest::Approx(std::exp(0.5)).epsilon(1e-12));
}

TEST_CASE("p >= n regime: max-entry ratio concentrates near one") {
  ExperimentConfig cfg;
  cfg.process =
      ProcessSpec::sv(TailLaw{1.0, 0.5, 1.0}, ExpGaussianVol{{1.0}, 1.0});
  cfg.alpha = 1.0;
  cfg.n = 50;
  cfg.growth = GrowthKappa{1.5};
  cfg.k = 1;
  cfg.reps = 100;
  cfg.seed = 31;
  cfg.checks.ratio_max_entry = true;
  cfg.tol.ks_largest = 0.10;
  const VerificationReport rep = run_experiment(cfg);
  CHECK(rep.p == 354);
  CHECK(rep.ratio_max_entry.median >= 0.8);
  CHECK(rep.ratio_max_entry.median <= 1.2);
}

TEST_CASE("summary stats") {
  const SummaryStats s = summarize({1.0, 2.0, 3.0, 4.0});
  CHECK(s.median == doctest::Approx(2.5));
  CHECK(s.mean == doctest::Approx(2.5));
  CHECK(s.min == 1.0);
  CHECK(s.max == 4.0);
  CHECK(s.mad_from_one == doctest::Approx(1.5));
}

}  // TEST_SUITE
