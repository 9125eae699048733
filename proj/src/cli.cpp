#include "ppcurve/cli.hpp"

#include <cmath>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ppcurve/bootstrap.hpp"
#include "ppcurve/data_io.hpp"
#include "ppcurve/errors.hpp"
#include "ppcurve/experiments.hpp"
#include "ppcurve/limit.hpp"
#include "ppcurve/text.hpp"

namespace ppcurve {

namespace {

struct Options {
  std::string fx = "uniform:0,1";
  std::string gy = "uniform:0,1";
  std::string copula = "product";
  std::string ref_fx = "uniform:0,1";
  std::string ref_gy = "uniform:0,1";
  std::string ref_copula = "product";
  std::string n_list;
  std::optional<std::size_t> m;
  std::optional<double> rho;
  std::size_t reps = 2000;
  std::size_t boot_b = 2000;
  std::size_t grid = kDefaultGridCells;
  double shift = 1.0 / 64.0;
  std::size_t draws = 20000;
  std::uint64_t seed = 1;
  double a = 0.25;
  double b = 0.75;
  bool compare_sampling = false;
  std::string in;
  std::string in_x;
  std::string in_y;
  std::string out;
  std::optional<int> threads;
};

// A usage problem attributable to one flag.
struct FlagError : std::runtime_error {
  FlagError(const std::string& flag, const std::string& what)
      : std::runtime_error(flag + ": " + what) {}
};

std::vector<std::size_t> parse_n_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (std::string_view token : split(text, ',')) {
    const double v = parse_real(trim(token), "--n");
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e9) {
      throw FlagError("--n", "sample sizes must be positive integers");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

template <class Fn>
auto with_flag(const std::string& flag, Fn&& fn) {
  try {
    return fn();
  } catch (const InvalidParameter& e) {
    throw FlagError(flag, e.what());
  } catch (const DomainError& e) {
    throw FlagError(flag, e.what());
  }
}

ExperimentConfig make_config(const Options& o, std::vector<std::size_t> default_n) {
  ExperimentConfig c;
  c.fx = with_flag("--fx", [&] { return MarginModel::parse(o.fx).to_spec(); });
  c.gy = with_flag("--gy", [&] { return MarginModel::parse(o.gy).to_spec(); });
  c.copula = with_flag("--copula", [&] { return CopulaModel::parse(o.copula).to_spec(); });
  c.reference_fx = with_flag("--ref-fx", [&] { return MarginModel::parse(o.ref_fx).to_spec(); });
  c.reference_gy = with_flag("--ref-gy", [&] { return MarginModel::parse(o.ref_gy).to_spec(); });
  c.reference_copula =
      with_flag("--ref-copula", [&] { return CopulaModel::parse(o.ref_copula).to_spec(); });
  c.n_list = o.n_list.empty() ? std::move(default_n)
                              : with_flag("--n", [&] { return parse_n_list(o.n_list); });
  if (o.m && o.rho) throw FlagError("--m", "give either --m or --rho, not both");
  if (o.m || o.rho) c.mode = SampleMode::Independent;
  c.m = o.m;
  c.rho = o.rho;
  c.replicates = o.reps;
  c.bootstrap_b = o.boot_b;
  c.grid = o.grid;
  c.shift = o.shift;
  c.limit_draws = o.draws;
  c.seed = o.seed;
  c.compare_sampling = o.compare_sampling;
  c.a = o.a;
  c.b = o.b;
  try {
    c.validate();
  } catch (const InvalidParameter& e) {
    throw FlagError("config", e.what());
  }
  return c;
}

Execution execution_of(const Options& o) {
  return Execution{o.threads ? *o.threads : threads_from_environment()};
}

// "<dir>/<stem>.samples.csv" next to the JSON report.
std::filesystem::path sidecar_path(const std::filesystem::path& json_path) {
  std::filesystem::path p = json_path;
  p.replace_extension();
  p += ".samples.csv";
  return p;
}

SampleData load_data(const Options& o) {
  if (!o.in.empty()) {
    if (!o.in_x.empty() || !o.in_y.empty()) {
      throw FlagError("--in", "use either --in or --in-x/--in-y");
    }
    return read_paired_csv(o.in);
  }
  if (o.in_x.empty() || o.in_y.empty()) {
    throw FlagError("--in", "input required: --in pairs.csv, or --in-x and --in-y");
  }
  SampleData d;
  d.paired = false;
  d.x = read_column_csv(o.in_x);
  d.y = read_column_csv(o.in_y);
  return d;
}

void add_model_flags(CLI::App* app, Options& o) {
  app->add_option("--fx", o.fx, "margin of X (spec string)")->capture_default_str();
  app->add_option("--gy", o.gy, "margin of Y (spec string)")->capture_default_str();
  app->add_option("--copula", o.copula, "copula of (X,Y)")->capture_default_str();
}

void add_design_flags(CLI::App* app, Options& o) {
  app->add_option("--n", o.n_list, "comma-separated ascending sample sizes");
  app->add_option("--m", o.m, "fixed x-sample size (independent samples)");
  app->add_option("--rho", o.rho, "two-sample ratio; m(n) = round(n(1-rho)/rho)");
  app->add_option("--reps", o.reps, "Monte Carlo replicates")->capture_default_str();
  app->add_option("--grid", o.grid, "grid cells J")->capture_default_str();
  app->add_option("--draws", o.draws, "limit-law draws")->capture_default_str();
}

void add_run_flags(CLI::App* app, Options& o) {
  app->add_option("--seed", o.seed, "master seed")->capture_default_str();
  app->add_option("--out", o.out, "output path");
  app->add_option("--threads", o.threads, "worker cap (default PPCURVE_THREADS)")
      ->check(CLI::NonNegativeNumber);
}

void add_input_flags(CLI::App* app, Options& o) {
  app->add_option("--in", o.in, "paired CSV (x,y)");
  app->add_option("--in-x", o.in_x, "x-sample CSV (one column)");
  app->add_option("--in-y", o.in_y, "y-sample CSV (one column)");
}

int emit_report(const ExperimentReport& report, const Options& o, std::ostream& out,
                std::ostream& err) {
  if (!o.out.empty()) {
    write_file_atomic(o.out, report.json_text());
    write_file_atomic(sidecar_path(o.out), report.samples_csv());
  }
  err << "wall_clock_seconds=" << format_real(report.wall_clock_seconds) << "\n";
  out << report.experiment << ": all_pass=" << (report.all_pass() ? "true" : "false");
  for (const auto& [name, ok] : report.pass) out << " " << name << "=" << (ok ? "ok" : "FAIL");
  if (!o.out.empty()) out << " report=" << o.out;
  out << "\n";
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"P-P curve inference: plots, bootstrap, limit simulation, experiments"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  auto* pp = app.add_subcommand("pp-plot", "empirical P-P plot as CSV (u,value)");
  add_input_flags(pp, o);
  pp->add_option("--out", o.out, "output CSV (default stdout)");
  pp->callback([&] {
    action = [&]() {
      const SampleData data = load_data(o);
      const StepFunction plot = build_pp_plot(SortedSample(data.x), SortedSample(data.y));
      const std::string csv = pp_plot_csv(plot);
      if (o.out.empty()) {
        out << csv;
      } else {
        write_file_atomic(o.out, csv);
        out << "pp-plot: m=" << data.m() << " n=" << data.n() << " rows=" << plot.cells() + 1
            << " out=" << o.out << "\n";
      }
      return 0;
    };
  });

  auto* boot = app.add_subcommand("bootstrap", "bootstrap replicates of sqrt(n)||R*_n - R_n||_1");
  add_input_flags(boot, o);
  boot->add_option("--boot-b", o.boot_b, "bootstrap replicates B")->capture_default_str();
  add_run_flags(boot, o);
  boot->callback([&] {
    action = [&]() {
      const PPPlotData data(load_data(o));
      BootstrapRequest request;
      request.replicates = o.boot_b;
      request.seed = o.seed;
      request.stream_n = data.data().n();
      err << "config: {\"boot_b\":" << o.boot_b << ",\"seed\":" << o.seed
          << ",\"paired\":" << (data.data().paired ? "true" : "false") << "}\n";
      const std::vector<double> reps = bootstrap_replicates(data, request, execution_of(o));
      if (!o.out.empty()) {
        std::string csv = "index,value\n";
        for (std::size_t i = 0; i < reps.size(); ++i) {
          csv += std::to_string(i) + "," + format_real(reps[i]) + "\n";
        }
        write_file_atomic(o.out, csv);
      }
      out << "bootstrap: B=" << reps.size() << " mean=" << format_real(sample_mean(reps))
          << " sd=" << format_real(sample_sd(reps))
          << " p95=" << format_real(sample_quantile(reps, 0.95)) << "\n";
      return 0;
    };
  });

  auto* lim = app.add_subcommand("limit-sim", "draws of the L1 norm of the limit process");
  add_model_flags(lim, o);
  add_design_flags(lim, o);
  add_run_flags(lim, o);
  lim->callback([&] {
    action = [&]() {
      const ExperimentConfig config = make_config(o, {1});
      err << "config: " << config.to_json().dump() << "\n";
      const PPCurve curve(MarginModel::parse(config.fx), MarginModel::parse(config.gy));
      const double kappa = config.kappa_for(config.n_list.back());
      const LimitSampler sampler(
          LimitSpec{curve, CopulaModel::parse(config.copula), kappa, config.grid});
      const std::vector<double> norms = limit_norm_samples(
          sampler, config.limit_draws, config.seed, stream_tag("limit"), execution_of(o));
      ExperimentReport report;
      report.experiment = "limit_sim";
      report.config = config;
      nlohmann::ordered_json row;
      row["kappa"] = kappa;
      row["ridge"] = sampler.ridge();
      row["mean"] = sample_mean(norms);
      row["sd"] = sample_sd(norms);
      row["se"] = standard_error(norms);
      row["p99"] = sample_quantile(norms, 0.99);
      report.results.push_back(row);
      report.samples.push_back({"limit", 0, norms});
      return emit_report(report, o, out, err);
    };
  });

  using Driver = std::function<ExperimentReport(const ExperimentConfig&, Execution)>;
  const auto experiment = [&](const char* name, const char* help, Driver driver,
                              std::vector<std::size_t> default_n) {
    auto* sub = app.add_subcommand(name, help);
    add_model_flags(sub, o);
    add_design_flags(sub, o);
    add_run_flags(sub, o);
    return std::make_pair(sub, [&, driver, default_n]() {
      const ExperimentConfig config = make_config(o, default_n);
      err << "config: " << config.to_json().dump() << "\n";
      return emit_report(driver(config, execution_of(o)), o, out, err);
    });
  };
  const std::vector<std::size_t> ladder = {256, 1024, 4096};

  auto [conv, conv_run] = experiment("mc-convergence", "sampling law vs limit law (KS)",
                                     run_convergence_experiment, ladder);
  conv->callback([&, run = conv_run] { action = run; });

  auto [mcb, mcb_run] = experiment("mc-bootstrap", "bootstrap law vs limit law (KS)",
                                   run_bootstrap_validity_experiment, ladder);
  mcb->add_option("--boot-b", o.boot_b, "bootstrap replicates B")->capture_default_str();
  mcb->add_flag("--compare-sampling", o.compare_sampling,
                "also compare with the sampling distribution");
  mcb->callback([&, run = mcb_run] { action = run; });

  auto [div, div_run] = experiment("mc-divergence", "shift-modulus diagnostic vs AC reference",
                                   run_divergence_diagnostic, ladder);
  div->add_option("--shift", o.shift, "shift h (multiple of 1/grid)")->capture_default_str();
  div->add_option("--ref-fx", o.ref_fx, "reference margin of X")->capture_default_str();
  div->add_option("--ref-gy", o.ref_gy, "reference margin of Y")->capture_default_str();
  div->add_option("--ref-copula", o.ref_copula, "reference copula")->capture_default_str();
  div->callback([&, run = div_run] { action = run; });

  auto [dkw, dkw_run] = experiment("dkw", "mean sup deviation vs sqrt(pi/2)", run_dkw_check,
                                   {1024});
  dkw->callback([&, run = dkw_run] { action = run; });

  auto [ineq, ineq_run] = experiment(
      "inequality", "L1 inequality on [a,b] for the limit process",
      [&](const ExperimentConfig& c, Execution e) { return run_inequality_check(c, c.a, c.b, e); },
      {4096});
  ineq->add_option("--a", o.a, "left end of the interval")->capture_default_str();
  ineq->add_option("--b", o.b, "right end of the interval")->capture_default_str();
  ineq->callback([&, run = ineq_run] { action = run; });

  auto* eq = app.add_subcommand("test-equal", "bootstrap test of F = G on paired data");
  eq->add_option("--in", o.in, "paired CSV (x,y)")->required();
  eq->add_option("--boot-b", o.boot_b, "bootstrap replicates B")->capture_default_str();
  add_run_flags(eq, o);
  eq->callback([&] {
    action = [&]() {
      err << "config: {\"boot_b\":" << o.boot_b << ",\"seed\":" << o.seed << "}\n";
      const EqualityTestResult r =
          run_equality_test(read_paired_csv(o.in), o.boot_b, o.seed, execution_of(o));
      if (!o.out.empty()) {
        nlohmann::ordered_json j;
        j["schema_version"] = kReportSchemaVersion;
        j["experiment"] = "equality_test";
        j["seed"] = o.seed;
        j["boot_b"] = o.boot_b;
        j["statistic"] = r.statistic;
        j["p_value"] = r.p_value;
        write_file_atomic(o.out, j.dump(2) + "\n");
      }
      out << "p=" << format_real(r.p_value) << " T=" << format_real(r.statistic) << "\n";
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  try {
    return action();
  } catch (const FlagError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace ppcurve
