#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "php/bounds.hpp"
#include "php/montecarlo.hpp"

namespace php {

// Invalid user input (flags, config file, units, spec consistency). The CLI
// maps this to exit code 2; numeric failures map to 3.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CurveId { kLbClosed, kLbThm1, kLbThm2, kUbPpp, kApproxEquiv, kMc };

struct CurveRequest {
  CurveId id = CurveId::kUbPpp;
  int n = 0;  // partition count, kLbClosed only

  friend bool operator==(const CurveRequest&, const CurveRequest&) = default;
};

// Evaluation radii: either an explicit strictly-increasing list or a uniform
// grid r_min..r_max with `count` points (endpoints included).
struct RGridSpec {
  double r_min = 0.0;
  double r_max = 0.0;
  int count = 0;
  std::vector<double> explicit_r;

  std::vector<double> make() const;
};

enum class OutputFormat { kCsv, kJson };

struct OutputSpec {
  std::string path;
  OutputFormat format = OutputFormat::kCsv;
};

struct ExperimentSpec {
  ModelParams params;  // canonical units: m, 1/m^2
  RefCase ref_case = RefCase::kR1;
  RGridSpec grid;
  std::vector<CurveRequest> curves;
  std::optional<SimConfig> sim;
  OutputSpec output;

  void validate() const;  // throws UsageError
};

// Unit-checked field parsing. Lengths accept "250", "250m", "0.25km" (bare
// numbers are meters). Densities REQUIRE a suffix: "10/km2" or "1e-4/m2"
// ("^2" spellings accepted) — a bare density is the classic silent 1e6 bug,
// so it is rejected naming the field.
double parse_length_m(const std::string& text, const std::string& field);
double parse_density_per_m2(const std::string& text, const std::string& field);

std::string curve_token(const CurveRequest& curve);  // "lb_closed8", "mc", ...
CurveRequest parse_curve_token(const std::string& token);

// Pre-parse field bag: CLI flags and config-file values land here as strings
// before unit conversion and defaulting.
struct RawSpec {
  std::optional<std::string> lambda1, lambda2, d_hole;
  std::optional<std::string> r_min, r_max, points, r_list;
  std::optional<std::string> curves, ref_case;
  std::optional<std::string> trials, seed, confidence, window, tail_prob, fixed_radius;
  std::optional<std::string> output, format;
};

enum class RunMode { kBounds, kSimulate, kCompare };

// Converts, fills documented defaults, validates. Throws UsageError.
ExperimentSpec parse_spec(const RawSpec& raw, RunMode mode);

// Resolved spec as JSON; embedded verbatim in every output for provenance.
nlohmann::json spec_to_json(const ExperimentSpec& spec);

struct CurveColumn {
  std::string name;
  std::vector<double> values;
};

struct CdfTable {
  std::vector<double> r;
  std::vector<CurveColumn> columns;
};

// Analytic curves only (raw + clamped column per curve, canonical order).
CdfTable run_bounds(const ExperimentSpec& spec);

// Monte Carlo only: mc, ci_low, ci_high columns.
CdfTable run_simulate(const ExperimentSpec& spec, int threads, long* saturated_out);

struct CompareReport {
  CdfTable table;  // analytic curves + mc columns
  nlohmann::json verdict;
  bool pass = false;
  long saturated = 0;
};

// Analytic curves and simulation on one grid plus a per-point verdict:
// every lower-bound curve must sit at or below the Wilson upper limit and
// every upper bound at or above the lower limit. The equivalent-density
// approximation is reported but not judged (it is not a bound).
CompareReport run_compare(const ExperimentSpec& spec, int threads);

// "%.17g" (shortest text that round-trips a double in practice).
std::string format_g17(double v);

// First line "# spec=<json>", then a header row and one row per radius.
void write_table_csv(std::ostream& out, const ExperimentSpec& spec,
                     const CdfTable& table);
// {"spec":..., "columns":..., "rows":..., "verdict":...?}. Non-finite values
// serialize as null (JSON has no inf); the CSV writer keeps them as text.
void write_table_json(std::ostream& out, const ExperimentSpec& spec,
                      const CdfTable& table, const nlohmann::json* verdict);

// key = value lines; '#' full-line comments; later duplicates win.
std::map<std::string, std::string> read_key_value_config(std::istream& in);

// Bare filenames are placed under $PHP_CONTACT_OUTDIR when it is set;
// paths containing '/' are used as-is.
std::string resolve_output_path(const std::string& path);

}  // namespace php
