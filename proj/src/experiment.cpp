#include "php/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>

namespace php {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    if (comma == std::string::npos) {
      parts.push_back(trim(s.substr(start)));
      break;
    }
    parts.push_back(trim(s.substr(start, comma - start)));
    start = comma + 1;
  }
  return parts;
}

double parse_number(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  if (t.empty()) throw UsageError("field '" + field + "': empty value");
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) {
    throw UsageError("field '" + field + "': cannot parse number from '" + text + "'");
  }
  return v;
}

long parse_long(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  if (t.empty()) throw UsageError("field '" + field + "': empty value");
  char* end = nullptr;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (end != t.c_str() + t.size()) {
    throw UsageError("field '" + field + "': cannot parse integer from '" + text + "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  if (t.empty() || t[0] == '-') {
    throw UsageError("field '" + field + "': expected a nonnegative integer");
  }
  char* end = nullptr;
  const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
  if (end != t.c_str() + t.size()) {
    throw UsageError("field '" + field + "': cannot parse integer from '" + text + "'");
  }
  return static_cast<std::uint64_t>(v);
}

std::string to_lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

int curve_rank(const CurveRequest& c) {
  switch (c.id) {
    case CurveId::kLbClosed: return 0;
    case CurveId::kLbThm1: return 1;
    case CurveId::kLbThm2: return 2;
    case CurveId::kUbPpp: return 3;
    case CurveId::kApproxEquiv: return 4;
    case CurveId::kMc: return 5;
  }
  return 6;
}

bool curve_less(const CurveRequest& a, const CurveRequest& b) {
  if (curve_rank(a) != curve_rank(b)) return curve_rank(a) < curve_rank(b);
  return a.n < b.n;
}

bool is_lower_bound(CurveId id) {
  return id == CurveId::kLbClosed || id == CurveId::kLbThm1 || id == CurveId::kLbThm2;
}

BoundValue eval_curve(const CurveRequest& c, double r, const ExperimentSpec& spec) {
  switch (c.id) {
    case CurveId::kLbClosed:
      return lb_r1_closed_form(r, spec.params, PartitionScheme{c.n});
    case CurveId::kLbThm1:
      return lb_r1_theorem1(r, spec.params);
    case CurveId::kLbThm2:
      return lb_r2_theorem2(r, spec.params);
    case CurveId::kUbPpp:
      return spec.ref_case == RefCase::kR1 ? ub_ppp(r, spec.params.lambda2)
                                           : ub_r2_ppp(r, spec.params);
    case CurveId::kApproxEquiv:
      return approx_equiv(r, spec.params);
    case CurveId::kMc:
      break;
  }
  throw std::logic_error("eval_curve: not an analytic curve");
}

struct EvaluatedCurve {
  CurveRequest req;
  std::vector<BoundValue> values;
};

std::vector<EvaluatedCurve> evaluate_analytic(const ExperimentSpec& spec,
                                              const std::vector<double>& grid) {
  std::vector<EvaluatedCurve> curves;
  for (const CurveRequest& c : spec.curves) {
    if (c.id == CurveId::kMc) continue;
    EvaluatedCurve ec{c, {}};
    ec.values.reserve(grid.size());
    for (double r : grid) ec.values.push_back(eval_curve(c, r, spec));
    curves.push_back(std::move(ec));
  }
  return curves;
}

void append_curve_columns(CdfTable& table, const std::vector<EvaluatedCurve>& curves) {
  for (const EvaluatedCurve& ec : curves) {
    const std::string token = curve_token(ec.req);
    CurveColumn raw{token + "_raw", {}};
    CurveColumn clamped{token + "_clamped", {}};
    raw.values.reserve(ec.values.size());
    clamped.values.reserve(ec.values.size());
    for (const BoundValue& v : ec.values) {
      raw.values.push_back(v.raw);
      clamped.values.push_back(v.clamped);
    }
    table.columns.push_back(std::move(raw));
    table.columns.push_back(std::move(clamped));
  }
}

void append_mc_columns(CdfTable& table, const EmpiricalCdf& cdf) {
  table.columns.push_back({"mc", cdf.estimate});
  table.columns.push_back({"ci_low", cdf.ci_low});
  table.columns.push_back({"ci_high", cdf.ci_high});
}

EmpiricalCdf simulate_on_grid(const ExperimentSpec& spec,
                              const std::vector<double>& grid, int threads,
                              long* saturated_out) {
  const TrialRunResult run = run_trials(spec.params, *spec.sim, threads);
  if (saturated_out) *saturated_out = run.saturated;
  if (run.samples.empty()) {
    throw SaturationError("all trials saturated; no samples to estimate from");
  }
  return estimate_cdf(run.samples, grid, spec.sim->confidence);
}

}  // namespace

double parse_length_m(const std::string& text, const std::string& field) {
  std::string t = trim(text);
  double factor = 1.0;
  if (t.size() >= 2 && t.compare(t.size() - 2, 2, "km") == 0) {
    factor = 1000.0;
    t = trim(t.substr(0, t.size() - 2));
  } else if (!t.empty() && t.back() == 'm') {
    t = trim(t.substr(0, t.size() - 1));
  }
  const double v = parse_number(t, field);
  if (!std::isfinite(v) || v < 0.0) {
    throw UsageError("field '" + field + "': length must be finite and >= 0");
  }
  return v * factor;
}

double parse_density_per_m2(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  const std::size_t slash = t.find('/');
  if (slash == std::string::npos) {
    throw UsageError("field '" + field +
                     "': density requires a unit suffix, e.g. '10/km2' or '1e-5/m2'");
  }
  const std::string unit = to_lower(trim(t.substr(slash + 1)));
  double divisor = 0.0;
  if (unit == "m2" || unit == "m^2") {
    divisor = 1.0;
  } else if (unit == "km2" || unit == "km^2") {
    divisor = 1e6;  // dividing (not multiplying by 1e-6) keeps e.g. 10/km2 exact
  } else {
    throw UsageError("field '" + field + "': unknown density unit '/" + unit +
                     "' (expected /m2 or /km2)");
  }
  const double v = parse_number(t.substr(0, slash), field);
  if (!std::isfinite(v) || v < 0.0) {
    throw UsageError("field '" + field + "': density must be finite and >= 0");
  }
  return v / divisor;
}

std::string curve_token(const CurveRequest& curve) {
  switch (curve.id) {
    case CurveId::kLbClosed: return "lb_closed" + std::to_string(curve.n);
    case CurveId::kLbThm1: return "lb_thm1";
    case CurveId::kLbThm2: return "lb_thm2";
    case CurveId::kUbPpp: return "ub_ppp";
    case CurveId::kApproxEquiv: return "approx_equiv";
    case CurveId::kMc: return "mc";
  }
  return "?";
}

CurveRequest parse_curve_token(const std::string& token) {
  const std::string t = to_lower(trim(token));
  if (t == "lb_thm1") return {CurveId::kLbThm1, 0};
  if (t == "lb_thm2") return {CurveId::kLbThm2, 0};
  if (t == "ub_ppp") return {CurveId::kUbPpp, 0};
  if (t == "approx_equiv") return {CurveId::kApproxEquiv, 0};
  if (t == "mc") return {CurveId::kMc, 0};
  const std::string prefix = "lb_closed";
  if (t.size() > prefix.size() && t.compare(0, prefix.size(), prefix) == 0) {
    const long n = parse_long(t.substr(prefix.size()), "curves");
    if (n < 1) throw UsageError("curve '" + token + "': partition count must be >= 1");
    return {CurveId::kLbClosed, static_cast<int>(n)};
  }
  throw UsageError("unknown curve '" + token +
                   "' (expected lb_closed<N>, lb_thm1, lb_thm2, ub_ppp, "
                   "approx_equiv, or mc)");
}

std::vector<double> RGridSpec::make() const {
  if (!explicit_r.empty()) return explicit_r;
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    grid[static_cast<std::size_t>(i)] =
        (i == count - 1)
            ? r_max
            : r_min + (r_max - r_min) * (static_cast<double>(i) / (count - 1));
  }
  return grid;
}

void ExperimentSpec::validate() const {
  try {
    params.validate();
    if (sim) sim->validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  if (!grid.explicit_r.empty()) {
    double prev = -1.0;
    for (double r : grid.explicit_r) {
      if (!std::isfinite(r) || r < 0.0) {
        throw UsageError("grid radii must be finite and >= 0");
      }
      if (!(r > prev)) throw UsageError("grid radii must be strictly increasing");
      prev = r;
    }
  } else {
    if (grid.count < 2) throw UsageError("grid needs at least 2 points");
    if (!(std::isfinite(grid.r_min) && std::isfinite(grid.r_max) &&
          grid.r_min >= 0.0 && grid.r_min < grid.r_max)) {
      throw UsageError("grid requires 0 <= rmin < rmax, finite");
    }
  }

  if (curves.empty()) throw UsageError("no curves requested");
  bool has_mc = false;
  for (const CurveRequest& c : curves) {
    if (c.id == CurveId::kLbClosed && c.n < 1) {
      throw UsageError("lb_closed partition count must be >= 1");
    }
    if (c.id == CurveId::kMc) has_mc = true;
    if (ref_case == RefCase::kR1 && c.id == CurveId::kLbThm2) {
      throw UsageError("curve 'lb_thm2' requires case r2");
    }
    if (ref_case == RefCase::kR2 &&
        (c.id == CurveId::kLbThm1 || c.id == CurveId::kLbClosed ||
         c.id == CurveId::kApproxEquiv)) {
      throw UsageError("curve '" + curve_token(c) + "' is r1-only");
    }
  }
  if (has_mc && !sim) {
    throw UsageError("curve 'mc' requires simulation settings (compare or simulate)");
  }
  if (sim && sim->ref_case != ref_case) {
    throw UsageError("simulation case does not match the experiment case");
  }
  if (output.path.empty()) throw UsageError("missing required field 'output'");
}

ExperimentSpec parse_spec(const RawSpec& raw, RunMode mode) {
  const auto need = [](const std::optional<std::string>& f,
                       const char* name) -> const std::string& {
    if (!f) throw UsageError(std::string("missing required field '") + name + "'");
    return *f;
  };

  ExperimentSpec spec;
  spec.params.lambda1 = parse_density_per_m2(need(raw.lambda1, "lambda1"), "lambda1");
  spec.params.lambda2 = parse_density_per_m2(need(raw.lambda2, "lambda2"), "lambda2");
  spec.params.d_hole = parse_length_m(need(raw.d_hole, "D"), "D");

  if (raw.ref_case) {
    const std::string c = to_lower(trim(*raw.ref_case));
    if (c == "r1") {
      spec.ref_case = RefCase::kR1;
    } else if (c == "r2") {
      spec.ref_case = RefCase::kR2;
    } else {
      throw UsageError("field 'case': expected r1 or r2, got '" + *raw.ref_case + "'");
    }
  }

  if (raw.r_list) {
    for (const std::string& tok : split_commas(*raw.r_list)) {
      spec.grid.explicit_r.push_back(parse_length_m(tok, "r-list"));
    }
  } else {
    spec.grid.r_max = parse_length_m(need(raw.r_max, "rmax"), "rmax");
    spec.grid.count =
        raw.points ? static_cast<int>(parse_long(*raw.points, "points")) : 50;
    if (spec.grid.count < 2) throw UsageError("field 'points': need at least 2");
    spec.grid.r_min = raw.r_min ? parse_length_m(*raw.r_min, "rmin")
                                : spec.grid.r_max / spec.grid.count;
  }

  if (mode == RunMode::kSimulate) {
    spec.curves = {{CurveId::kMc, 0}};
  } else {
    if (raw.curves) {
      for (const std::string& tok : split_commas(*raw.curves)) {
        if (!tok.empty()) spec.curves.push_back(parse_curve_token(tok));
      }
    } else if (spec.ref_case == RefCase::kR1) {
      spec.curves = {{CurveId::kLbClosed, 8},
                     {CurveId::kLbThm1, 0},
                     {CurveId::kUbPpp, 0},
                     {CurveId::kApproxEquiv, 0}};
    } else {
      spec.curves = {{CurveId::kLbThm2, 0}, {CurveId::kUbPpp, 0}};
    }
    if (mode == RunMode::kCompare) {
      const CurveRequest mc{CurveId::kMc, 0};
      if (std::find(spec.curves.begin(), spec.curves.end(), mc) == spec.curves.end()) {
        spec.curves.push_back(mc);
      }
    }
  }
  std::sort(spec.curves.begin(), spec.curves.end(), curve_less);
  spec.curves.erase(std::unique(spec.curves.begin(), spec.curves.end()),
                    spec.curves.end());

  if (mode != RunMode::kBounds) {
    SimConfig sim;
    sim.trials = raw.trials ? parse_long(*raw.trials, "trials") : 10000;
    sim.master_seed = raw.seed ? parse_u64(*raw.seed, "seed") : 1;
    sim.confidence =
        raw.confidence ? parse_number(*raw.confidence, "confidence") : 0.99;
    const std::string window =
        raw.window ? to_lower(trim(*raw.window)) : std::string("adaptive");
    if (window == "adaptive") {
      sim.window.kind = WindowPolicy::Kind::kAdaptive;
      if (raw.fixed_radius) {
        throw UsageError("field 'fixed-radius' requires window = fixed");
      }
      if (raw.tail_prob) {
        sim.window.tail_prob = parse_number(*raw.tail_prob, "tail-prob");
      }
    } else if (window == "fixed") {
      sim.window.kind = WindowPolicy::Kind::kFixed;
      if (raw.tail_prob) throw UsageError("field 'tail-prob' requires window = adaptive");
      sim.window.fixed_radius =
          parse_length_m(need(raw.fixed_radius, "fixed-radius"), "fixed-radius");
    } else {
      throw UsageError("field 'window': expected adaptive or fixed, got '" +
                       *raw.window + "'");
    }
    sim.ref_case = spec.ref_case;
    sim.r_max =
        spec.grid.explicit_r.empty() ? spec.grid.r_max : spec.grid.explicit_r.back();
    spec.sim = sim;
  }

  spec.output.path = resolve_output_path(need(raw.output, "output"));
  if (raw.format) {
    const std::string f = to_lower(trim(*raw.format));
    if (f == "csv") {
      spec.output.format = OutputFormat::kCsv;
    } else if (f == "json") {
      spec.output.format = OutputFormat::kJson;
    } else {
      throw UsageError("field 'format': expected csv or json, got '" + *raw.format + "'");
    }
  } else {
    const std::string& p = spec.output.path;
    spec.output.format = (p.size() >= 5 && p.compare(p.size() - 5, 5, ".json") == 0)
                             ? OutputFormat::kJson
                             : OutputFormat::kCsv;
  }

  spec.validate();
  return spec;
}

nlohmann::json spec_to_json(const ExperimentSpec& spec) {
  nlohmann::json j;
  j["params"] = {{"lambda1_per_m2", spec.params.lambda1},
                 {"lambda2_per_m2", spec.params.lambda2},
                 {"d_hole_m", spec.params.d_hole}};
  j["case"] = spec.ref_case == RefCase::kR1 ? "r1" : "r2";
  if (!spec.grid.explicit_r.empty()) {
    j["grid"] = {{"explicit_m", spec.grid.explicit_r}};
  } else {
    j["grid"] = {{"r_min_m", spec.grid.r_min},
                 {"r_max_m", spec.grid.r_max},
                 {"count", spec.grid.count}};
  }
  nlohmann::json curves = nlohmann::json::array();
  for (const CurveRequest& c : spec.curves) curves.push_back(curve_token(c));
  j["curves"] = curves;
  if (spec.sim) {
    nlohmann::json window;
    if (spec.sim->window.kind == WindowPolicy::Kind::kAdaptive) {
      window = {{"kind", "adaptive"}, {"tail_prob", spec.sim->window.tail_prob}};
    } else {
      window = {{"kind", "fixed"}, {"radius_m", spec.sim->window.fixed_radius}};
    }
    j["sim"] = {{"trials", spec.sim->trials},
                {"master_seed", spec.sim->master_seed},
                {"r_max_m", spec.sim->r_max},
                {"confidence", spec.sim->confidence},
                {"growth_cap", spec.sim->growth_cap},
                {"window", window}};
  }
  j["output"] = {{"path", spec.output.path},
                 {"format",
                  spec.output.format == OutputFormat::kCsv ? "csv" : "json"}};
  return j;
}

CdfTable run_bounds(const ExperimentSpec& spec) {
  spec.validate();
  for (const CurveRequest& c : spec.curves) {
    if (c.id == CurveId::kMc) {
      throw UsageError("run_bounds cannot evaluate 'mc'; use compare or simulate");
    }
  }
  CdfTable table;
  table.r = spec.grid.make();
  append_curve_columns(table, evaluate_analytic(spec, table.r));
  return table;
}

CdfTable run_simulate(const ExperimentSpec& spec, int threads, long* saturated_out) {
  spec.validate();
  if (!spec.sim) throw UsageError("simulate requires simulation settings");
  CdfTable table;
  table.r = spec.grid.make();
  append_mc_columns(table, simulate_on_grid(spec, table.r, threads, saturated_out));
  return table;
}

CompareReport run_compare(const ExperimentSpec& spec, int threads) {
  spec.validate();
  if (!spec.sim) throw UsageError("compare requires simulation settings");

  CompareReport report;
  report.table.r = spec.grid.make();
  const std::vector<EvaluatedCurve> analytic = evaluate_analytic(spec, report.table.r);
  append_curve_columns(report.table, analytic);
  const EmpiricalCdf cdf =
      simulate_on_grid(spec, report.table.r, threads, &report.saturated);
  append_mc_columns(report.table, cdf);

  long failures = 0;
  nlohmann::json points = nlohmann::json::array();
  for (std::size_t i = 0; i < report.table.r.size(); ++i) {
    nlohmann::json checks = nlohmann::json::object();
    bool ok = true;
    for (const EvaluatedCurve& ec : analytic) {
      if (ec.req.id == CurveId::kApproxEquiv) continue;
      const BoundValue& v = ec.values[i];
      const bool check = is_lower_bound(ec.req.id) ? v.clamped <= cdf.ci_high[i]
                                                   : v.raw >= cdf.ci_low[i];
      checks[curve_token(ec.req)] = check;
      ok = ok && check;
    }
    if (!ok) ++failures;
    points.push_back({{"r", report.table.r[i]}, {"pass", ok}, {"checks", checks}});
  }
  report.pass = failures == 0;
  report.verdict = {{"overall", report.pass},
                    {"failures", failures},
                    {"trials", cdf.trials},
                    {"saturated_trials", report.saturated},
                    {"confidence", cdf.confidence},
                    {"points", points}};
  return report;
}

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_table_csv(std::ostream& out, const ExperimentSpec& spec,
                     const CdfTable& table) {
  out << "# spec=" << spec_to_json(spec).dump() << "\n";
  out << "r";
  for (const CurveColumn& col : table.columns) out << "," << col.name;
  out << "\n";
  for (std::size_t i = 0; i < table.r.size(); ++i) {
    out << format_g17(table.r[i]);
    for (const CurveColumn& col : table.columns) out << "," << format_g17(col.values[i]);
    out << "\n";
  }
}

void write_table_json(std::ostream& out, const ExperimentSpec& spec,
                      const CdfTable& table, const nlohmann::json* verdict) {
  nlohmann::json j;
  j["spec"] = spec_to_json(spec);
  nlohmann::json columns = nlohmann::json::array();
  columns.push_back("r");
  for (const CurveColumn& col : table.columns) columns.push_back(col.name);
  j["columns"] = columns;
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < table.r.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    row.push_back(table.r[i]);
    for (const CurveColumn& col : table.columns) row.push_back(col.values[i]);
    rows.push_back(std::move(row));
  }
  j["rows"] = rows;
  if (verdict) j["verdict"] = *verdict;
  out << j.dump(2) << "\n";
}

std::map<std::string, std::string> read_key_value_config(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(lineno) +
                       ": expected 'key = value', got '" + s + "'");
    }
    const std::string key = trim(s.substr(0, eq));
    if (key.empty()) {
      throw UsageError("config line " + std::to_string(lineno) + ": empty key");
    }
    out[key] = trim(s.substr(eq + 1));
  }
  return out;
}

std::string resolve_output_path(const std::string& path) {
  if (path.find('/') != std::string::npos) return path;
  const char* dir = std::getenv("PHP_CONTACT_OUTDIR");
  if (dir != nullptr && *dir != '\0') return std::string(dir) + "/" + path;
  return path;
}

}  // namespace php
