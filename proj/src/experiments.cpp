#include "ppcurve/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "ppcurve/bootstrap.hpp"
#include "ppcurve/errors.hpp"
#include "ppcurve/functionals.hpp"
#include "ppcurve/limit.hpp"
#include "ppcurve/special.hpp"
#include "ppcurve/text.hpp"

namespace ppcurve {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kTagConvergence = stream_tag("convergence");
constexpr std::uint64_t kTagLimit = stream_tag("limit");
constexpr std::uint64_t kTagBootstrapData = stream_tag("bootstrap-data");
constexpr std::uint64_t kTagBootstrap = stream_tag("bootstrap");
constexpr std::uint64_t kTagDivergence = stream_tag("divergence");
constexpr std::uint64_t kTagDkw = stream_tag("dkw");
constexpr std::uint64_t kTagInequality = stream_tag("inequality");
constexpr std::uint64_t kTagEquality = stream_tag("equality");

// A limit law whose L1 norms never exceed this is treated as a point mass at 0.
constexpr double kDegenerateLimit = 1e-6;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

PPCurve curve_of(const ExperimentConfig& c) {
  return PPCurve(MarginModel::parse(c.fx), MarginModel::parse(c.gy));
}

void require_ac(const PPCurve& curve, const std::string& experiment) {
  if (curve.ac_class() != AcClass::AbsolutelyContinuous) {
    throw InvalidState(experiment + " requires an absolutely continuous P-P curve, but "
                       "this configuration is " + std::string(to_string(curve.ac_class())) +
                       "; the L1 limit does not exist, run the divergence diagnostic "
                       "(mc-divergence) instead");
  }
}

Json summary(const std::vector<double>& v) {
  Json j;
  j["mean"] = sample_mean(v);
  j["sd"] = sample_sd(v);
  j["se"] = standard_error(v);
  j["p99"] = sample_quantile(v, 0.99);
  return j;
}

// Limit-norm samples keyed by kappa; paired designs share one law across n.
class LimitCache {
 public:
  LimitCache(const ExperimentConfig& config, const PPCurve& curve, const CopulaModel& copula,
             Execution exec)
      : config_(config), curve_(curve), copula_(copula), exec_(exec) {}

  const std::vector<double>& norms(double kappa) {
    auto it = cache_.find(kappa);
    if (it != cache_.end()) return it->second;
    const LimitSampler sampler(LimitSpec{curve_, copula_, kappa, config_.grid});
    auto samples = limit_norm_samples(sampler, config_.limit_draws, config_.seed, kTagLimit, exec_);
    return cache_.emplace(kappa, std::move(samples)).first->second;
  }

 private:
  const ExperimentConfig& config_;
  const PPCurve& curve_;
  const CopulaModel& copula_;
  Execution exec_;
  std::map<double, std::vector<double>> cache_;
};

bool is_degenerate(const std::vector<double>& limit) {
  return *std::max_element(limit.begin(), limit.end()) <= kDegenerateLimit;
}

std::vector<double> sampling_distribution(const ExperimentConfig& config, const PPCurve& curve,
                                          const CopulaModel& copula, std::size_t n,
                                          Execution exec) {
  const double root_n = std::sqrt(static_cast<double>(n));
  return map_indexed<double>(
      config.replicates,
      [&](std::size_t i) {
        RngStream stream = RngStream::substream(config.seed, kTagConvergence, n, i);
        const SampleData data = draw_experiment_data(config, curve, copula, n, stream);
        const StepFunction plot = build_pp_plot(SortedSample(data.x), SortedSample(data.y));
        return root_n * l1_step_vs_curve(plot, curve);
      },
      exec);
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

void ExperimentConfig::validate() const {
  const auto fail = [](const std::string& msg) { throw InvalidParameter(msg); };
  (void)MarginModel::parse(fx);
  (void)MarginModel::parse(gy);
  const CopulaModel cop = CopulaModel::parse(copula);
  (void)MarginModel::parse(reference_fx);
  (void)MarginModel::parse(reference_gy);
  (void)CopulaModel::parse(reference_copula);
  if (n_list.empty()) fail("n list must not be empty");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1) fail("sample sizes must be >= 1");
    if (i > 0 && n_list[i] <= n_list[i - 1]) fail("n list must be strictly ascending");
  }
  if (replicates < 100) fail("replicates must be >= 100");
  if (bootstrap_b < 1) fail("bootstrap B must be >= 1");
  if (limit_draws < 1) fail("limit draws must be >= 1");
  if (grid < 2) fail("grid must have at least 2 cells");
  if (!(shift > 0.0 && shift < 1.0)) fail("shift must lie in (0,1)");
  if (mode == SampleMode::Independent) {
    if (!cop.is_product()) fail("independent samples require the product copula");
    if (rho.has_value() == m.has_value()) fail("independent mode needs exactly one of rho or m");
    if (rho && !(*rho > 0.0 && *rho < 1.0)) fail("rho must lie in (0,1)");
    if (m && *m < 1) fail("m must be >= 1");
    for (std::size_t n : n_list) {
      if (m_for(n) < 1) fail("m(n) rounds to 0 for n=" + std::to_string(n));
    }
  }
  if (!(a > 0.0 && a < b && b < 1.0)) fail("inequality interval needs 0 < a < b < 1");
}

std::size_t ExperimentConfig::m_for(std::size_t n) const {
  if (mode == SampleMode::Paired) return n;
  if (m) return *m;
  const double r = *rho;
  return static_cast<std::size_t>(std::llround(static_cast<double>(n) * (1.0 - r) / r));
}

double ExperimentConfig::kappa_for(std::size_t n) const {
  if (mode == SampleMode::Paired) return 1.0;
  return std::sqrt(static_cast<double>(n) / static_cast<double>(m_for(n)));
}

nlohmann::ordered_json ExperimentConfig::to_json() const {
  Json j;
  j["fx"] = MarginModel::parse(fx).to_spec();
  j["gy"] = MarginModel::parse(gy).to_spec();
  j["copula"] = CopulaModel::parse(copula).to_spec();
  j["mode"] = mode == SampleMode::Paired ? "paired" : "independent";
  if (rho) j["rho"] = *rho;
  if (m) j["m"] = *m;
  j["n_list"] = n_list;
  j["replicates"] = replicates;
  j["bootstrap_b"] = bootstrap_b;
  j["grid"] = grid;
  j["shift"] = shift;
  j["limit_draws"] = limit_draws;
  j["seed"] = seed;
  j["compare_sampling"] = compare_sampling;
  j["reference_fx"] = MarginModel::parse(reference_fx).to_spec();
  j["reference_gy"] = MarginModel::parse(reference_gy).to_spec();
  j["reference_copula"] = CopulaModel::parse(reference_copula).to_spec();
  j["a"] = a;
  j["b"] = b;
  Json t;
  t["convergence_ks"] = tolerances.convergence_ks;
  t["bootstrap_ks"] = tolerances.bootstrap_ks;
  t["ks_monotone_slack"] = tolerances.ks_monotone_slack;
  t["p99_growth"] = tolerances.p99_growth;
  t["divergence_ratio"] = tolerances.divergence_ratio;
  t["divergence_decrease_slack"] = tolerances.divergence_decrease_slack;
  t["degenerate_bootstrap_mean"] = tolerances.degenerate_bootstrap_mean;
  t["dkw_sigmas"] = tolerances.dkw_sigmas;
  t["inequality_sigmas"] = tolerances.inequality_sigmas;
  j["tolerances"] = t;
  return j;
}

// ---------------------------------------------------------------------------
// Report

bool ExperimentReport::all_pass() const {
  return std::all_of(pass.begin(), pass.end(), [](const auto& p) { return p.second; });
}

nlohmann::ordered_json ExperimentReport::to_json() const {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["experiment"] = experiment;
  j["seed"] = config.seed;
  j["config"] = config.to_json();
  j["results"] = results;
  if (!extra.empty()) j["extra"] = extra;
  Json flags = Json::object();
  for (const auto& [name, ok] : pass) flags[name] = ok;
  j["pass"] = flags;
  j["all_pass"] = all_pass();
  return j;
}

std::string ExperimentReport::json_text() const { return to_json().dump(2) + "\n"; }

std::string ExperimentReport::samples_csv() const {
  std::string out = "series,n,index,value\n";
  for (const SampleSeries& s : samples) {
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      out += s.name;
      out += ',';
      out += std::to_string(s.n);
      out += ',';
      out += std::to_string(i);
      out += ',';
      out += format_real(s.values[i]);
      out += '\n';
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Summaries

double sample_mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_sd(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mean = sample_mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double standard_error(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return sample_sd(v) / std::sqrt(static_cast<double>(v.size()));
}

double sample_quantile(std::vector<double> v, double p) {
  if (v.empty()) throw DomainError("quantile of an empty sample");
  std::sort(v.begin(), v.end());
  const double h = (static_cast<double>(v.size()) - 1.0) * std::clamp(p, 0.0, 1.0);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

// ---------------------------------------------------------------------------
// Drivers

SampleData draw_experiment_data(const ExperimentConfig& config, const PPCurve& curve,
                                const CopulaModel& copula, std::size_t n,
                                RngStream& stream) {
  if (config.mode == SampleMode::Paired) return draw_paired_sample(curve, copula, n, stream);
  return draw_independent_samples(curve, config.m_for(n), n, stream);
}

ExperimentReport run_convergence_experiment(const ExperimentConfig& config, Execution exec) {
  const auto start = Clock::now();
  config.validate();
  const PPCurve curve = curve_of(config);
  require_ac(curve, "the convergence experiment");
  const CopulaModel copula = CopulaModel::parse(config.copula);
  const Tolerances& tol = config.tolerances;

  ExperimentReport report;
  report.experiment = "convergence";
  report.config = config;
  LimitCache limits(config, curve, copula, exec);

  std::vector<double> ks_values;
  std::vector<double> p99_values;
  bool degenerate_ok = true;
  bool any_degenerate = false;
  for (std::size_t n : config.n_list) {
    const std::vector<double> stats = sampling_distribution(config, curve, copula, n, exec);
    const double kappa = config.kappa_for(n);
    const std::vector<double>& limit = limits.norms(kappa);
    const double ks = ks_distance(stats, limit);
    const bool degenerate = is_degenerate(limit);

    Json row;
    row["n"] = n;
    row["m"] = config.m_for(n);
    row["kappa"] = kappa;
    row["statistic"] = summary(stats);
    row["limit"] = summary(limit);
    row["ks"] = ks;
    row["degenerate_limit"] = degenerate;
    report.results.push_back(row);

    ks_values.push_back(ks);
    p99_values.push_back(sample_quantile(stats, 0.99));
    if (degenerate) {
      any_degenerate = true;
      // A point-mass limit: the statistic itself must vanish at rate n^{-1/2}.
      degenerate_ok = degenerate_ok && std::abs(sample_mean(stats) - sample_mean(limit)) <=
                                           1.0 / std::sqrt(static_cast<double>(n));
    }
    report.samples.push_back({"statistic", n, stats});
  }
  report.samples.push_back({"limit", 0, limits.norms(config.kappa_for(config.n_list.back()))});

  if (any_degenerate) {
    report.pass.emplace_back("degenerate_mean_gap", degenerate_ok);
  } else {
    report.pass.emplace_back("ks_at_largest_n", ks_values.back() <= tol.convergence_ks);
    bool monotone = true;
    for (std::size_t i = 1; i < ks_values.size(); ++i) {
      monotone = monotone && ks_values[i] <= ks_values[i - 1] + tol.ks_monotone_slack;
    }
    report.pass.emplace_back("ks_non_increasing", monotone);
    report.pass.emplace_back("p99_bounded",
                             p99_values.back() <= (1.0 + tol.p99_growth) * p99_values.front());
  }
  report.wall_clock_seconds = seconds_since(start);
  return report;
}

ExperimentReport run_bootstrap_validity_experiment(const ExperimentConfig& config,
                                                   Execution exec) {
  const auto start = Clock::now();
  config.validate();
  const PPCurve curve = curve_of(config);
  require_ac(curve, "the bootstrap validity experiment");
  const CopulaModel copula = CopulaModel::parse(config.copula);
  const Tolerances& tol = config.tolerances;

  ExperimentReport report;
  report.experiment = "bootstrap_validity";
  report.config = config;
  LimitCache limits(config, curve, copula, exec);

  double last_ks = 0.0;
  double last_mean = 0.0;
  bool degenerate = false;
  for (std::size_t n : config.n_list) {
    RngStream data_stream = RngStream::substream(config.seed, kTagBootstrapData, n, 0);
    const PPPlotData data(draw_experiment_data(config, curve, copula, n, data_stream));
    BootstrapRequest request;
    request.replicates = config.bootstrap_b;
    request.seed = config.seed;
    request.tag = kTagBootstrap;
    request.stream_n = n;
    const std::vector<double> boot = bootstrap_replicates(data, request, exec);
    const std::vector<double>& limit = limits.norms(config.kappa_for(n));
    degenerate = is_degenerate(limit);

    Json row;
    row["n"] = n;
    row["m"] = config.m_for(n);
    row["kappa"] = config.kappa_for(n);
    row["bootstrap"] = summary(boot);
    row["limit"] = summary(limit);
    row["ks_to_limit"] = ks_distance(boot, limit);
    if (config.compare_sampling) {
      const std::vector<double> sampling = sampling_distribution(config, curve, copula, n, exec);
      row["sampling"] = summary(sampling);
      row["ks_to_sampling"] = ks_distance(boot, sampling);
    }
    report.results.push_back(row);
    last_ks = row["ks_to_limit"].get<double>();
    last_mean = sample_mean(boot);
    report.samples.push_back({"bootstrap", n, boot});
  }
  report.samples.push_back({"limit", 0, limits.norms(config.kappa_for(config.n_list.back()))});

  if (degenerate) {
    report.pass.emplace_back("bootstrap_concentrates", last_mean <= tol.degenerate_bootstrap_mean);
  } else {
    report.pass.emplace_back("ks_at_largest_n", last_ks <= tol.bootstrap_ks);
  }
  report.wall_clock_seconds = seconds_since(start);
  return report;
}

ExperimentReport run_divergence_diagnostic(const ExperimentConfig& config, Execution exec) {
  const auto start = Clock::now();
  config.validate();
  const PPCurve curve = curve_of(config);
  const CopulaModel copula = CopulaModel::parse(config.copula);
  const PPCurve reference(MarginModel::parse(config.reference_fx),
                          MarginModel::parse(config.reference_gy));
  const CopulaModel reference_copula = CopulaModel::parse(config.reference_copula);
  const Tolerances& tol = config.tolerances;
  const double cells = config.shift * static_cast<double>(config.grid);
  if (std::abs(cells - std::round(cells)) > 1e-9 * cells) {
    throw InvalidParameter("shift " + format_real(config.shift) +
                           " is not a whole number of grid cells (grid " +
                           std::to_string(config.grid) + ")");
  }

  ExperimentReport report;
  report.experiment = "divergence";
  report.config = config;
  report.extra["ac_class"] = to_string(curve.ac_class());
  report.extra["reference_ac_class"] = to_string(reference.ac_class());

  // Mean shift modulus of the grid-evaluated P-P process sqrt(n)(R_n - R).
  const auto moduli = [&](const PPCurve& target, const CopulaModel& cop, std::size_t n) {
    const double root_n = std::sqrt(static_cast<double>(n));
    std::vector<double> on_grid(config.grid);
    for (std::size_t j = 0; j < config.grid; ++j) {
      on_grid[j] = target((static_cast<double>(j) + 0.5) / static_cast<double>(config.grid));
    }
    return map_indexed<double>(
        config.replicates,
        [&](std::size_t i) {
          RngStream stream = RngStream::substream(config.seed, kTagDivergence, n, i);
          const SampleData data = draw_experiment_data(config, target, cop, n, stream);
          const StepFunction plot = build_pp_plot(SortedSample(data.x), SortedSample(data.y));
          std::vector<double> path(config.grid);
          for (std::size_t j = 0; j < config.grid; ++j) {
            const double u = (static_cast<double>(j) + 0.5) / static_cast<double>(config.grid);
            path[j] = root_n * (plot(u) - on_grid[j]);
          }
          return shift_modulus_l1(GridFunction(std::move(path)), config.shift);
        },
        exec);
  };

  std::vector<double> target_means;
  std::vector<double> ratios;
  for (std::size_t n : config.n_list) {
    const std::vector<double> target = moduli(curve, copula, n);
    const std::vector<double> ref = moduli(reference, reference_copula, n);
    const double ratio = sample_mean(target) / sample_mean(ref);
    Json row;
    row["n"] = n;
    row["m"] = config.m_for(n);
    row["modulus"] = summary(target);
    row["reference_modulus"] = summary(ref);
    row["ratio"] = ratio;
    report.results.push_back(row);
    target_means.push_back(sample_mean(target));
    ratios.push_back(ratio);
    report.samples.push_back({"modulus", n, target});
    report.samples.push_back({"reference_modulus", n, ref});
  }

  bool no_decrease = true;
  for (std::size_t i = 1; i < target_means.size(); ++i) {
    no_decrease = no_decrease &&
                  target_means[i] >= (1.0 - tol.divergence_decrease_slack) * target_means[i - 1];
  }
  const bool separated = ratios.back() >= tol.divergence_ratio;
  report.extra["verdict"] = separated && no_decrease ? "not_tight" : "tight";
  switch (curve.ac_class()) {
    case AcClass::NotAbsolutelyContinuous:
      report.pass.emplace_back("ratio_at_largest_n", separated);
      report.pass.emplace_back("modulus_not_decreasing", no_decrease);
      break;
    case AcClass::AbsolutelyContinuous:
      report.pass.emplace_back("ratio_below_threshold", !separated);
      break;
    case AcClass::Unknown:
      break;
  }
  report.wall_clock_seconds = seconds_since(start);
  return report;
}

ExperimentReport run_dkw_check(const ExperimentConfig& config, Execution exec) {
  const auto start = Clock::now();
  config.validate();
  const MarginModel margin = MarginModel::parse(config.fx);
  if (!margin.has_density()) {
    throw InvalidParameter("the DKW check needs a continuous margin, got " + margin.to_spec());
  }
  const double bound = std::sqrt(kPi / 2.0);
  ExperimentReport report;
  report.experiment = "dkw";
  report.config = config;
  report.extra["bound"] = bound;

  bool ok = true;
  const std::function<double(double)> identity = [](double u) { return u; };
  for (std::size_t n : config.n_list) {
    const double root_n = std::sqrt(static_cast<double>(n));
    const std::vector<double> stats = map_indexed<double>(
        config.replicates,
        [&](std::size_t i) {
          RngStream stream = RngStream::substream(config.seed, kTagDkw, n, i);
          // sup_x |F_n(x) - F(x)| equals the sup distance of the empirical cdf
          // of F(X_i) to the identity on [0,1] for continuous F.
          std::vector<double> mapped(n);
          for (double& v : mapped) v = margin.cdf(sample_margin(margin, stream.uniform()));
          const StepFunction ecdf = empirical_cdf_step(SortedSample(std::move(mapped)));
          return root_n * sup_step_vs_curve(ecdf, identity);
        },
        exec);
    const double mean = sample_mean(stats);
    const double limit = bound + config.tolerances.dkw_sigmas * standard_error(stats);
    Json row;
    row["n"] = n;
    row["statistic"] = summary(stats);
    row["threshold"] = limit;
    row["pass"] = mean <= limit;
    report.results.push_back(row);
    ok = ok && mean <= limit;
    report.samples.push_back({"statistic", n, stats});
  }
  report.pass.emplace_back("mean_within_bound", ok);
  report.wall_clock_seconds = seconds_since(start);
  return report;
}

ExperimentReport run_inequality_check(const ExperimentConfig& config, double a, double b,
                                      Execution exec) {
  const auto start = Clock::now();
  ExperimentConfig cfg = config;
  cfg.a = a;
  cfg.b = b;
  cfg.validate();
  const PPCurve curve = curve_of(cfg);
  require_ac(curve, "the inequality check");
  const CopulaModel copula = CopulaModel::parse(cfg.copula);
  const double kappa = cfg.kappa_for(cfg.n_list.back());
  const LimitSampler sampler(LimitSpec{curve, copula, kappa, cfg.grid});
  const std::size_t grid = sampler.grid();
  const double half = 0.5 / static_cast<double>(grid);

  std::vector<std::size_t> inside;
  std::vector<double> d_curve;
  for (std::size_t j = 0; j < grid; ++j) {
    const double u = sampler.point(j);
    if (u >= a && u <= b) {
      inside.push_back(j);
      d_curve.push_back(curve(u + half) - curve(u - half));
    }
  }
  const double constant = std::sqrt(kPi / 2.0) * (b - a);

  struct Sides {
    double lhs = 0.0;
    double rhs = 0.0;
  };
  const std::vector<Sides> draws = map_indexed<Sides>(
      cfg.limit_draws,
      [&](std::size_t i) {
        RngStream stream = RngStream::substream(cfg.seed, kTagInequality, 0, i);
        const LimitDraw d = sampler.draw(stream);
        Sides s;
        for (std::size_t k = 0; k < inside.size(); ++k) {
          const std::size_t j = inside[k];
          s.lhs += std::abs(d.b2[j]) * d_curve[k];
          s.rhs += std::abs(d.path[j]);
        }
        s.rhs /= static_cast<double>(grid);
        return s;
      },
      exec);
  std::vector<double> lhs(draws.size());
  std::vector<double> rhs_integral(draws.size());
  for (std::size_t i = 0; i < draws.size(); ++i) {
    lhs[i] = draws[i].lhs;
    rhs_integral[i] = draws[i].rhs;
  }
  const double lhs_mean = sample_mean(lhs);
  const double rhs_mean = sample_mean(rhs_integral) + constant;
  const double combined_se =
      std::hypot(standard_error(lhs), standard_error(rhs_integral));
  const bool ok = lhs_mean <= rhs_mean + cfg.tolerances.inequality_sigmas * combined_se;

  ExperimentReport report;
  report.experiment = "inequality";
  report.config = cfg;
  Json row;
  row["a"] = a;
  row["b"] = b;
  row["kappa"] = kappa;
  row["lhs_mean"] = lhs_mean;
  row["lhs_se"] = standard_error(lhs);
  row["rhs_integral_mean"] = sample_mean(rhs_integral);
  row["rhs_integral_se"] = standard_error(rhs_integral);
  row["rhs_constant"] = constant;
  row["rhs_mean"] = rhs_mean;
  row["combined_se"] = combined_se;
  report.results.push_back(row);
  report.pass.emplace_back("lhs_le_rhs", ok);
  report.samples.push_back({"lhs", 0, lhs});
  report.samples.push_back({"rhs_integral", 0, rhs_integral});
  report.wall_clock_seconds = seconds_since(start);
  return report;
}

EqualityTestResult run_equality_test(const SampleData& pairs, std::size_t b,
                                     std::uint64_t seed, Execution exec) {
  if (!pairs.paired || pairs.x.size() != pairs.y.size()) {
    throw DataError("the equality test needs paired data");
  }
  const std::size_t n = pairs.n();
  if (n < kEqualityTestMinN) {
    throw DataError("the equality test needs at least " + std::to_string(kEqualityTestMinN) +
                    " pairs, got " + std::to_string(n));
  }
  if (b < kEqualityTestMinB) {
    throw DomainError("the equality test needs B >= " + std::to_string(kEqualityTestMinB));
  }
  const auto constant = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
  };
  if (constant(pairs.x) || constant(pairs.y)) {
    throw DataError("the equality test needs non-constant x and y columns");
  }

  const PPPlotData data(pairs);
  EqualityTestResult result;
  result.statistic =
      std::sqrt(static_cast<double>(n)) * l1_step_vs_curve(data.plot(), PPCurve::identity());
  BootstrapRequest request;
  request.replicates = b;
  request.seed = seed;
  request.tag = kTagEquality;
  request.stream_n = n;
  result.replicates = bootstrap_replicates(data, request, exec);
  const auto exceed = std::count_if(result.replicates.begin(), result.replicates.end(),
                                    [&](double t) { return t >= result.statistic; });
  result.p_value = static_cast<double>(1 + exceed) / static_cast<double>(b + 1);
  return result;
}

}  // namespace ppcurve
