#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ppcurve/copulas.hpp"
#include "ppcurve/empirical.hpp"
#include "ppcurve/margins.hpp"
#include "ppcurve/parallel.hpp"

namespace ppcurve {

enum class SampleMode { Paired, Independent };

inline constexpr int kReportSchemaVersion = 1;

// Tolerances of the pass/fail flags. They are engineering choices sized from
// Monte Carlo error (3x the null KS noise 1.36/sqrt(2000) plus grid and
// finite-n allowance) and are echoed into every report.
struct Tolerances {
  double convergence_ks = 0.06;
  double bootstrap_ks = 0.08;
  double ks_monotone_slack = 0.01;
  double p99_growth = 0.10;
  double divergence_ratio = 3.0;
  double divergence_decrease_slack = 0.10;
  double degenerate_bootstrap_mean = 0.05;
  double dkw_sigmas = 3.0;
  double inequality_sigmas = 2.0;
};

struct ExperimentConfig {
  std::string fx = "uniform:0,1";
  std::string gy = "uniform:0,1";
  std::string copula = "product";
  SampleMode mode = SampleMode::Paired;
  // Independent mode: m(n) = round(n (1 - rho) / rho), or a fixed m.
  std::optional<double> rho;
  std::optional<std::size_t> m;
  std::vector<std::size_t> n_list = {256, 1024, 4096};
  std::size_t replicates = 2000;
  std::size_t bootstrap_b = 2000;
  std::size_t grid = 512;
  double shift = 1.0 / 64.0;
  std::size_t limit_draws = 20000;
  std::uint64_t seed = 1;
  // Bootstrap validity: also draw the sampling distribution at each n.
  bool compare_sampling = false;
  // AC reference for the divergence diagnostic.
  std::string reference_fx = "uniform:0,1";
  std::string reference_gy = "uniform:0,1";
  std::string reference_copula = "product";
  // Interval of the inequality check.
  double a = 0.25;
  double b = 0.75;
  Tolerances tolerances;

  // Throws InvalidParameter on violated invariants.
  void validate() const;

  // Size of the x-sample paired with a y-sample of size n.
  std::size_t m_for(std::size_t n) const;
  // Scale of the first bridge in the limit: 1 for paired data, sqrt(n / m)
  // (= sqrt(rho / (1 - rho))) for two independent samples.
  double kappa_for(std::size_t n) const;

  nlohmann::ordered_json to_json() const;
};

struct SampleSeries {
  std::string name;
  std::size_t n = 0;
  std::vector<double> values;
};

struct ExperimentReport {
  std::string experiment;
  ExperimentConfig config;
  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
  std::vector<std::pair<std::string, bool>> pass;
  std::vector<SampleSeries> samples;
  // Not serialized: the JSON must be byte-identical across reruns.
  double wall_clock_seconds = 0.0;

  bool all_pass() const;
  nlohmann::ordered_json to_json() const;
  std::string json_text() const;
  // Sidecar CSV: series,n,index,value
  std::string samples_csv() const;
};

ExperimentReport run_convergence_experiment(const ExperimentConfig& config,
                                            Execution exec = {});
ExperimentReport run_bootstrap_validity_experiment(const ExperimentConfig& config,
                                                   Execution exec = {});
ExperimentReport run_divergence_diagnostic(const ExperimentConfig& config,
                                           Execution exec = {});
ExperimentReport run_dkw_check(const ExperimentConfig& config, Execution exec = {});
ExperimentReport run_inequality_check(const ExperimentConfig& config, double a,
                                      double b, Execution exec = {});

// Draws one data set of the configured design at sample size n.
SampleData draw_experiment_data(const ExperimentConfig& config, const PPCurve& curve,
                                const CopulaModel& copula, std::size_t n,
                                RngStream& stream);

struct EqualityTestResult {
  double statistic = 0.0;  // sqrt(n) ||R_n - I||_1
  double p_value = 1.0;
  std::vector<double> replicates;
};

inline constexpr std::size_t kEqualityTestMinN = 20;
inline constexpr std::size_t kEqualityTestMinB = 200;

// Bootstrap test of H0: F = G (continuous) on paired data. The p-value uses
// the add-one convention (1 + #{T* >= T}) / (B + 1).
EqualityTestResult run_equality_test(const SampleData& pairs, std::size_t b,
                                     std::uint64_t seed, Execution exec = {});

// Summary helpers shared by the drivers and the acceptance suite.
double sample_mean(const std::vector<double>& v);
double sample_sd(const std::vector<double>& v);
double standard_error(const std::vector<double>& v);
// Type-7 (linear interpolation) sample quantile.
double sample_quantile(std::vector<double> v, double p);

}  // namespace ppcurve
