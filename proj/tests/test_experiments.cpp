#include <catch_amalgamated.hpp>

#include <cmath>

#include "ppcurve/errors.hpp"
#include "ppcurve/experiments.hpp"
#include "ppcurve/limit.hpp"
#include "support.hpp"

using namespace ppcurve;
using Catch::Approx;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.n_list = {64, 256};
  c.replicates = 200;
  c.bootstrap_b = 200;
  c.limit_draws = 2000;
  c.grid = 128;
  c.seed = 5;
  return c;
}

}  // namespace

TEST_CASE("summary helpers") {
  const std::vector<double> v = {1, 2, 3, 4};
  CHECK(sample_mean(v) == 2.5);
  CHECK(sample_sd(v) == Approx(std::sqrt(5.0 / 3.0)));
  CHECK(standard_error(v) == Approx(std::sqrt(5.0 / 3.0) / 2.0));
  CHECK(sample_quantile(v, 0.5) == 2.5);
  CHECK(sample_quantile(v, 0.99) == Approx(3.97));
  CHECK(sample_quantile(v, 0.0) == 1.0);
  CHECK(sample_quantile(v, 1.0) == 4.0);
  CHECK_THROWS(sample_quantile({}, 0.5));
}

TEST_CASE("config validation") {
  CHECK_NOTHROW(small_config().validate());
  auto bad = [](auto mutate) {
    ExperimentConfig c = small_config();
    mutate(c);
    return c;
  };
  CHECK_THROWS_AS(bad([](auto& c) { c.n_list = {256, 64}; }).validate(), InvalidParameter);
  CHECK_THROWS_AS(bad([](auto& c) { c.n_list = {}; }).validate(), InvalidParameter);
  CHECK_THROWS_AS(bad([](auto& c) { c.replicates = 99; }).validate(), InvalidParameter);
  CHECK_THROWS_AS(bad([](auto& c) { c.shift = 1.5; }).validate(), InvalidParameter);
  CHECK_THROWS_AS(run_divergence_diagnostic(bad([](auto& c) { c.shift = 0.3 / 128; })),
                  InvalidParameter);
  CHECK_THROWS_AS(bad([](auto& c) { c.fx = "gamma:1"; }).validate(), InvalidParameter);
  CHECK_THROWS_AS(bad([](auto& c) {
                    c.mode = SampleMode::Independent;
                    c.rho = 1.0;
                  }).validate(),
                  InvalidParameter);
  CHECK_THROWS_AS(bad([](auto& c) { c.mode = SampleMode::Independent; }).validate(),
                  InvalidParameter);
  CHECK_THROWS_AS(bad([](auto& c) {
                    c.mode = SampleMode::Independent;
                    c.rho = 0.5;
                    c.copula = "comonotone";
                  }).validate(),
                  InvalidParameter);
  CHECK_THROWS_AS(bad([](auto& c) { c.a = 0.8; }).validate(), InvalidParameter);

  ExperimentConfig two = small_config();
  two.mode = SampleMode::Independent;
  two.rho = 0.25;
  CHECK(two.m_for(4096) == 12288);
  CHECK(two.kappa_for(4096) == Approx(std::sqrt(1.0 / 3.0)));
  two.rho.reset();
  two.m = 100;
  CHECK(two.m_for(400) == 100);
  CHECK(two.kappa_for(400) == Approx(2.0));
}

TEST_CASE("reported specs re-parse to the same models") {
  ExperimentConfig c = small_config();
  c.fx = "normal:0.0,1.00";
  c.copula = "gaussian:0.50";
  const auto j = c.to_json();
  CHECK(MarginModel::parse(j["fx"].get<std::string>()) == MarginModel::normal(0, 1));
  CHECK(CopulaModel::parse(j["copula"].get<std::string>()) == CopulaModel::gaussian(0.5));
}

TEST_CASE("convergence experiment on a small configuration") {
  const ExperimentReport r = run_convergence_experiment(small_config());
  CHECK(r.experiment == "convergence");
  CHECK(r.results.size() == 2);
  CHECK(r.pass.size() == 3);
  CHECK(r.samples.size() == 3);
  CHECK(r.samples[0].values.size() == 200);
  const auto j = r.to_json();
  CHECK(j["schema_version"] == kReportSchemaVersion);
  CHECK(j["config"]["tolerances"]["convergence_ks"] == 0.06);
  CHECK(j.contains("all_pass"));
  CHECK(r.samples_csv().rfind("series,n,index,value\n", 0) == 0);
}

TEST_CASE("convergence refuses curves that are not absolutely continuous") {
  ExperimentConfig c = small_config();
  c.gy = "atoms:0=0.5,1=0.5";
  try {
    run_convergence_experiment(c);
    FAIL("expected a refusal");
  } catch (const InvalidState& e) {
    CHECK(std::string(e.what()).find("divergence") != std::string::npos);
  }
  CHECK_THROWS_AS(run_bootstrap_validity_experiment(c), InvalidState);
  CHECK_THROWS_AS(run_inequality_check(c, 0.25, 0.75), InvalidState);
}

TEST_CASE("degenerate comonotone case") {
  ExperimentConfig c = small_config();
  c.copula = "comonotone";
  const ExperimentReport conv = run_convergence_experiment(c);
  for (std::size_t i = 0; i < c.n_list.size(); ++i) {
    const double n = static_cast<double>(c.n_list[i]);
    CHECK(conv.results[i]["degenerate_limit"] == true);
    CHECK(conv.results[i]["statistic"]["mean"].get<double>() ==
          Approx(0.5 / std::sqrt(n)).margin(1e-12));
  }
  CHECK(conv.all_pass());
  REQUIRE(conv.pass.size() == 1);
  CHECK(conv.pass[0].first == "degenerate_mean_gap");

  c.n_list = {64, 4096};
  const ExperimentReport boot = run_bootstrap_validity_experiment(c);
  CHECK(boot.pass[0].first == "bootstrap_concentrates");
  CHECK(boot.all_pass());
}

TEST_CASE("divergence diagnostic separates the Bernoulli example") {
  ExperimentConfig c = small_config();
  c.gy = "atoms:0=0.5,1=0.5";
  c.n_list = {1024, 4096};
  c.replicates = 500;
  c.grid = 512;
  const ExperimentReport r = run_divergence_diagnostic(c);
  CHECK(r.extra["ac_class"] == "not_absolutely_continuous");
  CHECK(r.all_pass());
  const double target = r.results[1]["modulus"]["mean"].get<double>();
  const double ref = r.results[1]["reference_modulus"]["mean"].get<double>();
  // Spike model: 2 E sqrt(n)|p - 1/2| = sqrt(2/pi) ~ 0.798; reference ~ 0.141.
  CHECK(target == Approx(std::sqrt(2.0 / 3.141592653589793)).epsilon(0.06));
  CHECK(ref < 0.25);
  CHECK(ref == Approx(std::sqrt(2.0 / 64.0 * (63.0 / 64.0)) * std::sqrt(2.0 / 3.141592653589793))
                   .epsilon(0.1));

  ExperimentConfig ac = c;
  ac.gy = "uniform:0,1";
  const ExperimentReport same = run_divergence_diagnostic(ac);
  CHECK(same.results[1]["ratio"].get<double>() == Approx(1.0));
  CHECK(same.all_pass());
}

TEST_CASE("DKW check") {
  ExperimentConfig c = small_config();
  c.n_list = {1, 1024};
  c.replicates = 2000;
  const ExperimentReport r = run_dkw_check(c);
  CHECK(r.all_pass());
  // n = 1: E max(U, 1 - U) = 3/4.
  const auto& one = r.results[0]["statistic"];
  CHECK(std::abs(one["mean"].get<double>() - 0.75) <= 3.0 * one["se"].get<double>());
  c.fx = "atoms:0=0.5,1=0.5";
  CHECK_THROWS_AS(run_dkw_check(c), InvalidParameter);
}

TEST_CASE("reports are reproducible") {
  ExperimentConfig c = small_config();
  const ExperimentReport a = run_bootstrap_validity_experiment(c);
  const ExperimentReport b = run_bootstrap_validity_experiment(c);
  CHECK(a.json_text() == b.json_text());
  CHECK(a.samples_csv() == b.samples_csv());
  c.seed = 6;
  CHECK(run_bootstrap_validity_experiment(c).samples_csv() != a.samples_csv());
}

TEST_CASE("equality test") {
  RngStream s(41);
  SampleData same;
  for (int i = 0; i < 100; ++i) {
    const double v = s.uniform();
    same.x.push_back(v);
    same.y.push_back(v);
  }
  const EqualityTestResult r = run_equality_test(same, 499, 3);
  CHECK(r.statistic == Approx(0.5 / std::sqrt(100.0)).margin(1e-12));
  // Bootstrap replicates are O(1/sqrt(n)) as well, so identical columns are
  // only guaranteed not to be rejected, not to give p near 1.
  CHECK(r.p_value > 0.05);
  CHECK(r.replicates.size() == 499);
  CHECK(r.p_value > 0.0);
  CHECK(r.p_value <= 1.0);

  SampleData shifted;
  for (int i = 0; i < 200; ++i) {
    shifted.x.push_back(s.uniform());
    shifted.y.push_back(0.5 + s.uniform());
  }
  CHECK(run_equality_test(shifted, 199 + 1, 3).p_value == Approx(1.0 / 201.0));

  SampleData small = same;
  small.x.resize(10);
  small.y.resize(10);
  CHECK_THROWS_AS(run_equality_test(small, 499, 1), DataError);
  CHECK_THROWS_AS(run_equality_test(same, 100, 1), DomainError);
  SampleData flat = same;
  std::fill(flat.y.begin(), flat.y.end(), 2.0);
  CHECK_THROWS_AS(run_equality_test(flat, 499, 1), DataError);
  SampleData unpaired = same;
  unpaired.paired = false;
  CHECK_THROWS_AS(run_equality_test(unpaired, 499, 1), DataError);
}
