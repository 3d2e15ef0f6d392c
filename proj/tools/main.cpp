#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "php/experiment.hpp"

namespace {

using php::CurveId;
using php::CurveRequest;
using php::ExperimentSpec;
using php::ModelParams;
using php::OutputFormat;
using php::RawSpec;
using php::RefCase;
using php::RunMode;
using php::SimConfig;
using php::UsageError;
using php::WindowPolicy;

// One string slot per spec field, keyed by the long option name. The config
// file uses the same keys, so merging is uniform: a key present in both the
// file and the command line keeps the flag value (with a warning).
struct SpecOptions {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  std::string config_path;
  int threads = 0;
};

void add_spec_options(CLI::App* cmd, SpecOptions& o, bool with_sim, bool with_curves) {
  const auto add = [&](const std::string& key, const std::string& help) {
    // std::map node references are stable, so binding is safe while growing.
    o.options[key] = cmd->add_option("--" + key, o.values[key], help);
  };
  add("lambda1", "hole-center density; unit suffix required (e.g. 10/km2)");
  add("lambda2", "baseline density; unit suffix required (e.g. 100/km2)");
  add("D", "hole radius (meters unless suffixed: 100m, 0.1km)");
  add("rmin", "smallest grid radius (default rmax/points)");
  add("rmax", "largest grid radius");
  add("points", "grid point count (default 50)");
  add("r-list", "explicit comma-separated radii (replaces rmin/rmax/points)");
  add("case", "reference point: r1 (uniform) or r2 (hole center); default r1");
  if (with_curves) {
    add("curves",
        "comma list of lb_closed<N>, lb_thm1, lb_thm2, ub_ppp, approx_equiv, mc");
  }
  if (with_sim) {
    add("trials", "Monte Carlo trials (default 10000)");
    add("seed", "master seed (default 1)");
    add("confidence", "CI level in (0,1) (default 0.99)");
    add("window", "window policy: adaptive or fixed (default adaptive)");
    add("tail-prob", "adaptive policy: initial-window miss probability (default 1e-6)");
    add("fixed-radius", "fixed policy: window radius");
    cmd->add_option("--threads", o.threads,
                    "worker threads (0 = hardware); never affects output bytes");
  }
  add("output", "output file (.csv or .json); bare names land in $PHP_CONTACT_OUTDIR");
  add("format", "csv or json (default from output extension)");
  cmd->add_option("--config", o.config_path,
                  "key = value file using these option names; flags win over it");
}

void merge_config(SpecOptions& o) {
  if (o.config_path.empty()) return;
  std::ifstream in(o.config_path);
  if (!in) throw UsageError("cannot open config file '" + o.config_path + "'");
  for (const auto& [key, value] : php::read_key_value_config(in)) {
    const auto it = o.options.find(key);
    if (it == o.options.end()) {
      throw UsageError("config: unknown key '" + key + "'");
    }
    if (it->second->count() > 0) {
      std::cerr << "warning: field '" << key
                << "' set in both config and flags; flag wins\n";
    } else {
      o.values[key] = value;
    }
  }
}

RawSpec build_raw(SpecOptions& o) {
  merge_config(o);
  const auto get = [&](const char* key) -> std::optional<std::string> {
    const auto it = o.values.find(key);
    if (it == o.values.end() || it->second.empty()) return std::nullopt;
    return it->second;
  };
  RawSpec raw;
  raw.lambda1 = get("lambda1");
  raw.lambda2 = get("lambda2");
  raw.d_hole = get("D");
  raw.r_min = get("rmin");
  raw.r_max = get("rmax");
  raw.points = get("points");
  raw.r_list = get("r-list");
  raw.curves = get("curves");
  raw.ref_case = get("case");
  raw.trials = get("trials");
  raw.seed = get("seed");
  raw.confidence = get("confidence");
  raw.window = get("window");
  raw.tail_prob = get("tail-prob");
  raw.fixed_radius = get("fixed-radius");
  raw.output = get("output");
  raw.format = get("format");
  return raw;
}

void write_output(const ExperimentSpec& spec, const php::CdfTable& table,
                  const nlohmann::json* verdict) {
  std::ofstream out(spec.output.path);
  if (!out) throw UsageError("cannot open output file '" + spec.output.path + "'");
  if (spec.output.format == OutputFormat::kCsv) {
    php::write_table_csv(out, spec, table);
  } else {
    php::write_table_json(out, spec, table, verdict);
  }
  if (!out) throw std::runtime_error("failed writing '" + spec.output.path + "'");
}

int cmd_bounds(SpecOptions& o) {
  const ExperimentSpec spec = php::parse_spec(build_raw(o), RunMode::kBounds);
  std::cerr << "resolved spec: " << php::spec_to_json(spec).dump() << "\n";
  write_output(spec, php::run_bounds(spec), nullptr);
  std::cout << "wrote " << spec.output.path << "\n";
  return 0;
}

int cmd_simulate(SpecOptions& o) {
  const ExperimentSpec spec = php::parse_spec(build_raw(o), RunMode::kSimulate);
  std::cerr << "resolved spec: " << php::spec_to_json(spec).dump() << "\n";
  long saturated = 0;
  write_output(spec, php::run_simulate(spec, o.threads, &saturated), nullptr);
  std::cout << "wrote " << spec.output.path << " (saturated trials: " << saturated
            << ")\n";
  return 0;
}

int cmd_compare(SpecOptions& o) {
  const ExperimentSpec spec = php::parse_spec(build_raw(o), RunMode::kCompare);
  std::cerr << "resolved spec: " << php::spec_to_json(spec).dump() << "\n";
  const php::CompareReport report = php::run_compare(spec, o.threads);
  write_output(spec, report.table, &report.verdict);
  std::cout << report.verdict.dump() << "\n";
  std::cout << "wrote " << spec.output.path << "\n";
  return report.pass ? 0 : 1;
}

struct FigOptions {
  std::string outdir;
  long trials = 20000;
  std::uint64_t seed = 1;
  int threads = 0;
};

int cmd_reproduce_figs(const FigOptions& o) {
  if (!o.outdir.empty()) std::filesystem::create_directories(o.outdir);
  const double lambda1 = 10e-6;                 // the sweep's fixed value: 10 /km2
  const double lambda2_values[] = {50e-6, 100e-6};
  const double d_values[] = {50.0, 100.0};

  for (const RefCase ref_case : {RefCase::kR1, RefCase::kR2}) {
    for (const double lambda2 : lambda2_values) {
      for (const double d_hole : d_values) {
        ExperimentSpec spec;
        spec.params = ModelParams{lambda1, lambda2, d_hole};
        spec.ref_case = ref_case;
        spec.grid.r_min = 10.0;
        spec.grid.r_max = 500.0;
        spec.grid.count = 50;
        if (ref_case == RefCase::kR1) {
          spec.curves = {{CurveId::kLbClosed, 8},
                         {CurveId::kLbThm1, 0},
                         {CurveId::kUbPpp, 0},
                         {CurveId::kApproxEquiv, 0},
                         {CurveId::kMc, 0}};
        } else {
          spec.curves = {{CurveId::kLbThm2, 0}, {CurveId::kUbPpp, 0}, {CurveId::kMc, 0}};
        }
        SimConfig sim;
        sim.trials = o.trials;
        sim.master_seed = o.seed;
        sim.r_max = spec.grid.r_max;
        sim.ref_case = ref_case;
        spec.sim = sim;

        const std::string name = std::string("fig_") +
                                 (ref_case == RefCase::kR1 ? "r1" : "r2") +
                                 "_lambda2-" + std::to_string(static_cast<int>(lambda2 * 1e6)) +
                                 "km2_D-" + std::to_string(static_cast<int>(d_hole)) + "m.csv";
        spec.output.path = o.outdir.empty() ? php::resolve_output_path(name)
                                            : o.outdir + "/" + name;
        spec.output.format = OutputFormat::kCsv;

        const php::CompareReport report = php::run_compare(spec, o.threads);
        write_output(spec, report.table, &report.verdict);
        std::cout << "wrote " << spec.output.path
                  << (report.pass ? " (sandwich ok)" : " (sandwich FAILED)") << "\n";
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contact-distance bounds and Monte Carlo for the Poisson hole process"};
  app.require_subcommand(1);

  SpecOptions bounds_opts, simulate_opts, compare_opts;
  FigOptions fig_opts;

  CLI::App* bounds = app.add_subcommand("bounds", "evaluate analytic curves on a grid");
  add_spec_options(bounds, bounds_opts, /*with_sim=*/false, /*with_curves=*/true);

  CLI::App* simulate =
      app.add_subcommand("simulate", "estimate the contact CDF by Monte Carlo");
  add_spec_options(simulate, simulate_opts, /*with_sim=*/true, /*with_curves=*/false);

  CLI::App* compare =
      app.add_subcommand("compare", "bounds vs simulation with a sandwich verdict");
  add_spec_options(compare, compare_opts, /*with_sim=*/true, /*with_curves=*/true);

  CLI::App* figs =
      app.add_subcommand("reproduce-figs", "regenerate every figure-backing CSV");
  figs->add_option("--outdir", fig_opts.outdir,
                   "output directory (default: $PHP_CONTACT_OUTDIR or '.')");
  figs->add_option("--trials", fig_opts.trials, "Monte Carlo trials (default 20000)");
  figs->add_option("--seed", fig_opts.seed, "master seed (default 1)");
  figs->add_option("--threads", fig_opts.threads, "worker threads (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (bounds->parsed()) return cmd_bounds(bounds_opts);
    if (simulate->parsed()) return cmd_simulate(simulate_opts);
    if (compare->parsed()) return cmd_compare(compare_opts);
    if (figs->parsed()) return cmd_reproduce_figs(fig_opts);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
