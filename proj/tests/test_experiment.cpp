#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "php/experiment.hpp"

#include "test_helpers.hpp"

#ifdef PHP_CLI_PATH
#include <sys/wait.h>

#include <unistd.h>
#endif

using php::CurveId;
using php::CurveRequest;
using php::ExperimentSpec;
using php::OutputFormat;
using php::parse_curve_token;
using php::parse_density_per_m2;
using php::parse_length_m;
using php::parse_spec;
using php::RawSpec;
using php::RefCase;
using php::RunMode;
using php::UsageError;

namespace {

RawSpec minimal_raw() {
  RawSpec raw;
  raw.lambda1 = "10/km2";
  raw.lambda2 = "100/km2";
  raw.d_hole = "100";
  raw.r_max = "500";
  raw.output = "out.csv";
  return raw;
}

std::string tokens_of(const ExperimentSpec& spec) {
  std::string out;
  for (const CurveRequest& c : spec.curves) {
    if (!out.empty()) out += ",";
    out += php::curve_token(c);
  }
  return out;
}

}  // namespace

TEST_CASE("length parsing: bare meters, m/km suffixes, rejections") {
  CHECK(parse_length_m("250", "x") == 250.0);
  CHECK(parse_length_m(" 100m ", "x") == 100.0);
  CHECK(parse_length_m("0.5km", "x") == 500.0);
  CHECK(parse_length_m("1.5 km", "x") == 1500.0);
  CHECK_THROWS_WITH_AS(parse_length_m("-3", "rmax"), doctest::Contains("rmax"),
                       UsageError);
  CHECK_THROWS_AS(parse_length_m("abc", "x"), UsageError);
  CHECK_THROWS_AS(parse_length_m("", "x"), UsageError);
}

TEST_CASE("density parsing: suffix mandatory, /m2 and /km2 accepted") {
  CHECK(parse_density_per_m2("10/km2", "x") == 1e-5);
  CHECK(parse_density_per_m2("10/km^2", "x") == 1e-5);
  CHECK(parse_density_per_m2("1e-4/m2", "x") == 1e-4);
  CHECK(parse_density_per_m2(" 100 / KM2 ", "x") == 1e-4);
  CHECK(parse_density_per_m2("0/m2", "x") == 0.0);
  // The silent-million bug: a bare density must be rejected, naming the field.
  CHECK_THROWS_WITH_AS(parse_density_per_m2("10", "lambda1"),
                       doctest::Contains("lambda1"), UsageError);
  CHECK_THROWS_AS(parse_density_per_m2("10/mi2", "x"), UsageError);
  CHECK_THROWS_AS(parse_density_per_m2("-1/km2", "x"), UsageError);
}

TEST_CASE("curve tokens round-trip; invalid tokens rejected") {
  const char* tokens[] = {"lb_closed1", "lb_closed8",   "lb_thm1",
                          "lb_thm2",    "ub_ppp",       "approx_equiv",
                          "mc"};
  for (const char* t : tokens) {
    CHECK(php::curve_token(parse_curve_token(t)) == t);
  }
  CHECK(parse_curve_token("LB_THM1").id == CurveId::kLbThm1);
  CHECK(parse_curve_token("lb_closed16").n == 16);
  CHECK_THROWS_AS(parse_curve_token("lb_closed0"), UsageError);
  CHECK_THROWS_AS(parse_curve_token("lb_closed-2"), UsageError);
  CHECK_THROWS_AS(parse_curve_token("nonsense"), UsageError);
}

TEST_CASE("parse_spec: documented defaults for a bounds run") {
  const ExperimentSpec spec = parse_spec(minimal_raw(), RunMode::kBounds);
  CHECK(spec.params.lambda1 == 1e-5);
  CHECK(spec.params.lambda2 == 1e-4);
  CHECK(spec.params.d_hole == 100.0);
  CHECK(spec.ref_case == RefCase::kR1);
  CHECK_FALSE(spec.sim.has_value());
  CHECK(spec.output.format == OutputFormat::kCsv);

  const std::vector<double> grid = spec.grid.make();
  REQUIRE(grid.size() == 50);
  CHECK(grid.front() == 10.0);  // default rmin = rmax / points
  CHECK(grid.back() == 500.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(grid[i] == doctest::Approx(10.0 * (i + 1)).epsilon(1e-14));
  }

  CHECK(tokens_of(spec) == "lb_closed8,lb_thm1,ub_ppp,approx_equiv");
}

TEST_CASE("parse_spec: compare appends mc; simulate is mc-only; sim defaults") {
  const ExperimentSpec cmp = parse_spec(minimal_raw(), RunMode::kCompare);
  CHECK(tokens_of(cmp) == "lb_closed8,lb_thm1,ub_ppp,approx_equiv,mc");
  REQUIRE(cmp.sim.has_value());
  CHECK(cmp.sim->trials == 10000);
  CHECK(cmp.sim->master_seed == 1);
  CHECK(cmp.sim->confidence == 0.99);
  CHECK(cmp.sim->r_max == 500.0);
  CHECK(cmp.sim->ref_case == RefCase::kR1);
  CHECK(cmp.sim->window.kind == php::WindowPolicy::Kind::kAdaptive);
  CHECK(cmp.sim->window.tail_prob == 1e-6);

  const ExperimentSpec sim = parse_spec(minimal_raw(), RunMode::kSimulate);
  CHECK(tokens_of(sim) == "mc");
}

TEST_CASE("parse_spec: explicit curve list is sorted and deduplicated") {
  RawSpec raw = minimal_raw();
  raw.curves = "ub_ppp, lb_thm1, lb_closed2, lb_closed2, lb_closed8";
  const ExperimentSpec spec = parse_spec(raw, RunMode::kBounds);
  CHECK(tokens_of(spec) == "lb_closed2,lb_closed8,lb_thm1,ub_ppp");
}

TEST_CASE("parse_spec: r2 defaults and case/curve consistency") {
  RawSpec raw = minimal_raw();
  raw.ref_case = "r2";
  const ExperimentSpec spec = parse_spec(raw, RunMode::kCompare);
  CHECK(spec.ref_case == RefCase::kR2);
  CHECK(tokens_of(spec) == "lb_thm2,ub_ppp,mc");
  CHECK(spec.sim->ref_case == RefCase::kR2);

  RawSpec bad = minimal_raw();
  bad.curves = "lb_thm2";
  CHECK_THROWS_WITH_AS(parse_spec(bad, RunMode::kBounds),
                       doctest::Contains("lb_thm2"), UsageError);
  bad = minimal_raw();
  bad.ref_case = "r2";
  bad.curves = "lb_thm1";
  CHECK_THROWS_WITH_AS(parse_spec(bad, RunMode::kBounds),
                       doctest::Contains("r1-only"), UsageError);
  bad = minimal_raw();
  bad.ref_case = "r2";
  bad.curves = "approx_equiv";
  CHECK_THROWS_AS(parse_spec(bad, RunMode::kBounds), UsageError);
  bad = minimal_raw();
  bad.ref_case = "sideways";
  CHECK_THROWS_WITH_AS(parse_spec(bad, RunMode::kBounds),
                       doctest::Contains("case"), UsageError);
}

TEST_CASE("parse_spec: mc without simulation settings is a usage error") {
  RawSpec raw = minimal_raw();
  raw.curves = "lb_thm1, mc";
  CHECK_THROWS_WITH_AS(parse_spec(raw, RunMode::kBounds), doctest::Contains("mc"),
                       UsageError);
}

TEST_CASE("parse_spec: explicit radius lists") {
  RawSpec raw = minimal_raw();
  raw.r_max.reset();
  raw.r_list = "50, 0.1km, 250";
  const ExperimentSpec spec = parse_spec(raw, RunMode::kBounds);
  const std::vector<double> grid = spec.grid.make();
  REQUIRE(grid.size() == 3);
  CHECK(grid[0] == 50.0);
  CHECK(grid[1] == 100.0);
  CHECK(grid[2] == 250.0);

  RawSpec unsorted = minimal_raw();
  unsorted.r_list = "100, 50";
  CHECK_THROWS_WITH_AS(parse_spec(unsorted, RunMode::kBounds),
                       doctest::Contains("strictly increasing"), UsageError);
  RawSpec dup = minimal_raw();
  dup.r_list = "100, 100";
  CHECK_THROWS_AS(parse_spec(dup, RunMode::kBounds), UsageError);
}

TEST_CASE("parse_spec: missing required fields are named") {
  RawSpec raw = minimal_raw();
  raw.lambda2.reset();
  CHECK_THROWS_WITH_AS(parse_spec(raw, RunMode::kBounds),
                       doctest::Contains("lambda2"), UsageError);
  raw = minimal_raw();
  raw.output.reset();
  CHECK_THROWS_WITH_AS(parse_spec(raw, RunMode::kBounds),
                       doctest::Contains("output"), UsageError);
  raw = minimal_raw();
  raw.r_max.reset();
  CHECK_THROWS_WITH_AS(parse_spec(raw, RunMode::kBounds),
                       doctest::Contains("rmax"), UsageError);
}

TEST_CASE("parse_spec: window policy fields are mutually consistent") {
  RawSpec raw = minimal_raw();
  raw.window = "fixed";
  CHECK_THROWS_WITH_AS(parse_spec(raw, RunMode::kSimulate),
                       doctest::Contains("fixed-radius"), UsageError);
  raw.fixed_radius = "800";
  const ExperimentSpec spec = parse_spec(raw, RunMode::kSimulate);
  CHECK(spec.sim->window.kind == php::WindowPolicy::Kind::kFixed);
  CHECK(spec.sim->window.fixed_radius == 800.0);

  raw = minimal_raw();
  raw.tail_prob = "1e-9";
  const ExperimentSpec adaptive = parse_spec(raw, RunMode::kSimulate);
  CHECK(adaptive.sim->window.tail_prob == 1e-9);

  raw = minimal_raw();
  raw.window = "adaptive";
  raw.fixed_radius = "800";
  CHECK_THROWS_AS(parse_spec(raw, RunMode::kSimulate), UsageError);
  raw = minimal_raw();
  raw.window = "fixed";
  raw.fixed_radius = "800";
  raw.tail_prob = "1e-9";
  CHECK_THROWS_AS(parse_spec(raw, RunMode::kSimulate), UsageError);
}

TEST_CASE("parse_spec: format from extension, override, rejection") {
  RawSpec raw = minimal_raw();
  raw.output = "table.json";
  CHECK(parse_spec(raw, RunMode::kBounds).output.format == OutputFormat::kJson);
  raw.format = "csv";
  CHECK(parse_spec(raw, RunMode::kBounds).output.format == OutputFormat::kCsv);
  raw.format = "yaml";
  CHECK_THROWS_AS(parse_spec(raw, RunMode::kBounds), UsageError);
}

TEST_CASE("config reader: comments, trimming, duplicates, malformed lines") {
  std::istringstream in(
      "# a comment\n"
      "\n"
      "lambda1 = 10/km2\n"
      "  rmax=500m  \n"
      "lambda1 = 20/km2\n");
  const auto kv = php::read_key_value_config(in);
  REQUIRE(kv.size() == 2);
  CHECK(kv.at("lambda1") == "20/km2");  // later duplicate wins
  CHECK(kv.at("rmax") == "500m");

  std::istringstream bad("lambda1 10/km2\n");
  CHECK_THROWS_WITH_AS(php::read_key_value_config(bad), doctest::Contains("line 1"),
                       UsageError);
  std::istringstream empty_key("= 3\n");
  CHECK_THROWS_AS(php::read_key_value_config(empty_key), UsageError);
}

TEST_CASE("run_bounds: median radius of the baseline-PPP law evaluates to 1/2") {
  ExperimentSpec spec;
  spec.params = php::ModelParams{0.0, 1e-4, 50.0};
  spec.curves = {{CurveId::kUbPpp, 0}};
  spec.grid.explicit_r = {std::sqrt(std::log(2.0) / (1e-4 * php::kPi))};
  spec.output.path = "unused.csv";
  const php::CdfTable table = php::run_bounds(spec);
  REQUIRE(table.columns.size() == 2);
  CHECK(table.columns[0].name == "ub_ppp_raw");
  CHECK(table.columns[1].name == "ub_ppp_clamped");
  CHECK(table.columns[0].values[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("run_bounds: rejects mc and emits raw+clamped per curve in order") {
  RawSpec raw = minimal_raw();
  raw.points = "5";
  const ExperimentSpec spec = parse_spec(raw, RunMode::kBounds);
  const php::CdfTable table = php::run_bounds(spec);
  REQUIRE(table.r.size() == 5);
  REQUIRE(table.columns.size() == 8);
  CHECK(table.columns[0].name == "lb_closed8_raw");
  CHECK(table.columns[1].name == "lb_closed8_clamped");
  CHECK(table.columns[2].name == "lb_thm1_raw");
  CHECK(table.columns[4].name == "ub_ppp_raw");
  CHECK(table.columns[6].name == "approx_equiv_raw");
  for (const php::CurveColumn& col : table.columns) {
    CHECK(col.values.size() == table.r.size());
  }

  ExperimentSpec with_mc = parse_spec(minimal_raw(), RunMode::kCompare);
  CHECK_THROWS_AS(php::run_bounds(with_mc), UsageError);
}

TEST_CASE("format_g17 round-trips doubles exactly") {
  const double values[] = {0.1,    1.0 / 3.0, 1e300, 4.9406564584124654e-324,
                           -1134.2464961798517, 0.0,   12345.678901234567};
  for (double v : values) {
    const std::string s = php::format_g17(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("CSV writer: provenance line, header, parse-back of values") {
  RawSpec raw = minimal_raw();
  raw.points = "3";
  raw.curves = "ub_ppp";
  const ExperimentSpec spec = parse_spec(raw, RunMode::kBounds);
  const php::CdfTable table = php::run_bounds(spec);
  std::ostringstream out;
  php::write_table_csv(out, spec, table);

  std::istringstream in(out.str());
  std::string line;
  REQUIRE(std::getline(in, line));
  REQUIRE(line.rfind("# spec=", 0) == 0);
  const nlohmann::json spec_json = nlohmann::json::parse(line.substr(7));
  CHECK(spec_json["params"]["lambda2_per_m2"] == 1e-4);
  CHECK(spec_json["case"] == "r1");

  REQUIRE(std::getline(in, line));
  CHECK(line == "r,ub_ppp_raw,ub_ppp_clamped");
  int rows = 0;
  while (std::getline(in, line)) {
    const std::size_t comma = line.find(',');
    REQUIRE(comma != std::string::npos);
    const double r = std::strtod(line.substr(0, comma).c_str(), nullptr);
    CHECK(r == table.r[static_cast<std::size_t>(rows)]);
    const double v = std::strtod(line.substr(comma + 1).c_str(), nullptr);
    CHECK(v == table.columns[0].values[static_cast<std::size_t>(rows)]);
    ++rows;
  }
  CHECK(rows == 3);
}

TEST_CASE("JSON writer: structure, optional verdict, value fidelity") {
  RawSpec raw = minimal_raw();
  raw.points = "4";
  raw.curves = "lb_thm1";
  raw.output = "t.json";
  const ExperimentSpec spec = parse_spec(raw, RunMode::kBounds);
  const php::CdfTable table = php::run_bounds(spec);

  std::ostringstream without;
  php::write_table_json(without, spec, table, nullptr);
  nlohmann::json j = nlohmann::json::parse(without.str());
  CHECK(j["columns"][0] == "r");
  CHECK(j["columns"][1] == "lb_thm1_raw");
  REQUIRE(j["rows"].size() == 4);
  REQUIRE(j["rows"][0].size() == 3);
  CHECK(j["rows"][3][0].get<double>() == 500.0);
  CHECK(j["rows"][0][1].get<double>() ==
        php::lb_r1_theorem1(table.r[0], spec.params).raw);
  CHECK_FALSE(j.contains("verdict"));

  const nlohmann::json verdict = {{"overall", true}};
  std::ostringstream with;
  php::write_table_json(with, spec, table, &verdict);
  j = nlohmann::json::parse(with.str());
  CHECK(j["verdict"]["overall"] == true);
}

TEST_CASE("resolve_output_path honors PHP_CONTACT_OUTDIR for bare names") {
  const char* saved = std::getenv("PHP_CONTACT_OUTDIR");
  const std::string saved_copy = saved ? saved : "";

  setenv("PHP_CONTACT_OUTDIR", "/tmp/php-out", 1);
  CHECK(php::resolve_output_path("a.csv") == "/tmp/php-out/a.csv");
  CHECK(php::resolve_output_path("sub/a.csv") == "sub/a.csv");
  CHECK(php::resolve_output_path("/abs/a.csv") == "/abs/a.csv");
  unsetenv("PHP_CONTACT_OUTDIR");
  CHECK(php::resolve_output_path("a.csv") == "a.csv");

  if (saved) {
    setenv("PHP_CONTACT_OUTDIR", saved_copy.c_str(), 1);
  }
}

TEST_CASE("run_compare: sandwich verdict passes at the reference parameters") {
  RawSpec raw = minimal_raw();
  raw.trials = "10000";
  raw.seed = "7";
  const ExperimentSpec spec = parse_spec(raw, RunMode::kCompare);
  const php::CompareReport report = php::run_compare(spec, 0);
  CHECK(report.pass);
  CHECK(report.saturated == 0);
  CHECK(report.verdict["overall"] == true);
  CHECK(report.verdict["failures"] == 0);
  CHECK(report.verdict["trials"] == 10000);
  REQUIRE(report.verdict["points"].size() == 50);
  const nlohmann::json& first = report.verdict["points"][0];
  CHECK(first["checks"].contains("lb_thm1"));
  CHECK(first["checks"].contains("ub_ppp"));
  CHECK_FALSE(first["checks"].contains("approx_equiv"));
  // MC columns ride along after the analytic ones.
  REQUIRE(report.table.columns.size() == 11);
  CHECK(report.table.columns[8].name == "mc");
  CHECK(report.table.columns[9].name == "ci_low");
  CHECK(report.table.columns[10].name == "ci_high");
}

TEST_CASE("compare output bytes are identical across thread counts") {
  RawSpec raw = minimal_raw();
  raw.trials = "2000";
  raw.seed = "99";
  raw.points = "10";
  const ExperimentSpec spec = parse_spec(raw, RunMode::kCompare);

  const auto render = [&](int threads) {
    const php::CompareReport report = php::run_compare(spec, threads);
    std::ostringstream csv, json;
    php::write_table_csv(csv, spec, report.table);
    php::write_table_json(json, spec, report.table, &report.verdict);
    return csv.str() + "\x1f" + json.str();
  };
  CHECK(render(1) == render(3));
}

#ifdef PHP_CLI_PATH

namespace {

struct TempDir {
  std::filesystem::path path;

  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("php-contact-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }

  static int& counter() {
    static int n = 0;
    return n;
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run_cli(const std::string& args, const std::string& stderr_file = "") {
  std::string cmd = std::string(PHP_CLI_PATH) + " " + args;
  cmd += " 2>" + (stderr_file.empty() ? std::string("/dev/null") : stderr_file);
  cmd += " >/dev/null";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli: bounds run exits 0 and writes a well-formed CSV") {
  TempDir tmp;
  const std::string out = tmp.file("b.csv");
  const int code = run_cli(
      "bounds --lambda1 10/km2 --lambda2 100/km2 --D 100 --rmax 500 --points 5 "
      "--curves lb_thm1,ub_ppp --output " +
      out);
  CHECK(code == 0);
  const std::string text = slurp(out);
  CHECK(text.rfind("# spec=", 0) == 0);
  CHECK(text.find("r,lb_thm1_raw,lb_thm1_clamped,ub_ppp_raw,ub_ppp_clamped\n") !=
        std::string::npos);
}

TEST_CASE("cli: usage errors exit 2") {
  TempDir tmp;
  // Bare density (missing unit suffix).
  CHECK(run_cli("bounds --lambda1 10 --lambda2 100/km2 --D 100 --rmax 500 "
                "--output " +
                tmp.file("x.csv")) == 2);
  // Unknown flag (CLI parse error).
  CHECK(run_cli("bounds --no-such-flag 1") == 2);
  // Missing subcommand.
  CHECK(run_cli("") == 2);
  // r2-only curve under the default r1 case.
  CHECK(run_cli("bounds --lambda1 10/km2 --lambda2 100/km2 --D 100 --rmax 500 "
                "--curves lb_thm2 --output " +
                tmp.file("y.csv")) == 2);
}

TEST_CASE("cli: compare exits 1 when the verdict fails") {
  // With no holes, lb_thm1 and ub_ppp both equal the exact contact law, and a
  // 50% confidence band is far too tight for 50 grid points to all straddle
  // it. The frozen seed makes the outcome reproducible.
  TempDir tmp;
  const int code = run_cli(
      "compare --lambda1 0/km2 --lambda2 100/km2 --D 0 --rmax 500 "
      "--curves lb_thm1,ub_ppp --trials 2000 --seed 3 --confidence 0.5 "
      "--threads 2 --output " +
      tmp.file("fail.json"));
  CHECK(code == 1);
  const nlohmann::json j = nlohmann::json::parse(slurp(tmp.file("fail.json")));
  CHECK(j["verdict"]["overall"] == false);
  CHECK(j["verdict"]["failures"].get<long>() > 0);
}

TEST_CASE("cli: compare exits 0 on a passing sandwich and echoes the spec") {
  TempDir tmp;
  const std::string err = tmp.file("stderr.txt");
  const int code = run_cli(
      "compare --lambda1 10/km2 --lambda2 100/km2 --D 100 --rmax 500 "
      "--points 10 --trials 4000 --seed 11 --output " +
          tmp.file("cmp.csv"),
      err);
  CHECK(code == 0);
  CHECK(slurp(err).find("resolved spec:") != std::string::npos);
}

TEST_CASE("cli: config file merges under flags with a warning") {
  TempDir tmp;
  const std::string cfg = tmp.file("run.cfg");
  {
    std::ofstream out(cfg);
    out << "# shared experiment setup\n"
        << "lambda1 = 10/km2\n"
        << "lambda2 = 100/km2\n"
        << "D = 100\n"
        << "rmax = 400\n"
        << "points = 4\n";
  }
  const std::string err = tmp.file("stderr.txt");
  const std::string out = tmp.file("cfg.csv");
  const int code = run_cli(
      "bounds --config " + cfg + " --rmax 500 --curves ub_ppp --output " + out, err);
  CHECK(code == 0);
  CHECK(slurp(err).find("field 'rmax' set in both config and flags; flag wins") !=
        std::string::npos);
  // The flag value (500) must win over the config value (400).
  CHECK(slurp(out).find("\"r_max_m\":500.0") != std::string::npos);

  {
    std::ofstream bad(cfg, std::ios::app);
    bad << "unknown_key = 1\n";
  }
  CHECK(run_cli("bounds --config " + cfg + " --curves ub_ppp --output " + out) == 2);
}

TEST_CASE("cli: identical runs produce byte-identical files across thread counts") {
  // Same output path both times: the embedded spec JSON contains the path, so
  // byte identity is only meaningful for a truly identical spec.
  TempDir tmp;
  const std::string out = tmp.file("run.json");
  const std::string common =
      "compare --lambda1 10/km2 --lambda2 50/km2 --D 50 --rmax 300 --points 8 "
      "--trials 1500 --seed 21 --output " +
      out;
  REQUIRE(run_cli(common + " --threads 1") == 0);
  const std::string first = slurp(out);
  REQUIRE(run_cli(common + " --threads 7") == 0);
  CHECK(first == slurp(out));
}

TEST_CASE("cli: reproduce-figs creates the outdir and writes all eight CSVs") {
  TempDir tmp;
  const std::string outdir = tmp.file("figs");  // does not exist yet
  REQUIRE(run_cli("reproduce-figs --outdir " + outdir +
                  " --trials 40 --seed 5 --threads 2") == 0);
  std::size_t csvs = 0;
  for (const auto& entry : std::filesystem::directory_iterator(outdir)) {
    ++csvs;
    CHECK(entry.path().extension() == ".csv");
    CHECK(slurp(entry.path().string()).rfind("# spec=", 0) == 0);
  }
  CHECK(csvs == 8);
}

#endif  // PHP_CLI_PATH
