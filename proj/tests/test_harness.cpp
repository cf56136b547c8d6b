#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "lrpi/csv.hpp"
#include "lrpi/errors.hpp"
#include "lrpi/harness.hpp"
#include "lrpi/report.hpp"

using namespace lrpi;
using namespace lrpi::harness;

namespace {

const CoverageCell* find_cell(const CoverageReport& r, const std::string& method,
                              int horizon, double level) {
  for (const auto& c : r.cells) {
    if (c.method == method && c.horizon == horizon && c.level == level) return &c;
  }
  return nullptr;
}

std::string write_temp_csv(const std::string& name, const std::string& body) {
  const std::string path = "/tmp/lrpi_test_" + name + ".csv";
  std::ofstream out(path);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("relative median width arithmetic") {
  // widths all 2, denominator quantile gap 4 at level 0.9: uniform grid of
  // oos means from -2 to 2 has Q(0.95) - Q(0.05) close to 3.6; build the gap
  // explicitly instead.
  std::vector<double> oos;
  for (int i = 0; i < 1000; ++i) oos.push_back(-2.0 + 4.0 * i / 999.0);
  const auto w = relative_median_width(std::vector<double>{2.0, 2.0, 2.0}, oos, 0.9);
  REQUIRE(w.has_value());
  // Q(.95)-Q(.05) of the uniform grid = 0.9 * 4 = 3.6
  CHECK(*w == doctest::Approx(2.0 / 3.6).epsilon(1e-3));

  // degenerate denominator is reported as missing
  const auto undef =
      relative_median_width(std::vector<double>{1.0}, std::vector<double>(5, 0.0), 0.9);
  CHECK(!undef.has_value());

  CHECK_THROWS_AS(relative_median_width({}, oos, 0.9), InvalidInputError);
}

TEST_CASE("report CSV round trip is byte-identical") {
  CoverageReport report;
  CoverageCell a;
  a.scenario = "short-light";
  a.method = "kernel-boot";
  a.horizon = 130;
  a.level = 0.90;
  a.coverage = 0.7806;
  a.rel_width = 0.91;
  a.n_trials = 2000;
  a.n_skips = 0;
  CoverageCell b = a;
  b.method = "qtl-original";
  b.rel_width.reset();
  b.level = 0.67;
  report.cells = {a, b};

  std::ostringstream first;
  write_report_csv(report, first);
  std::istringstream parse_in(first.str());
  const auto parsed = parse_report_csv(parse_in);
  REQUIRE(parsed.cells.size() == 2);
  CHECK(parsed.cells[0].coverage == doctest::Approx(0.7806));
  CHECK(!parsed.cells[1].rel_width.has_value());
  CHECK(parsed.cells[1].level == doctest::Approx(0.67));

  std::ostringstream second;
  write_report_csv(parsed, second);
  CHECK(first.str() == second.str());
}

TEST_CASE("report writers reject empty reports; one cell gives header plus one row") {
  CoverageReport empty;
  std::ostringstream out;
  CHECK_THROWS_AS(write_report_csv(empty, out), InvalidInputError);
  CHECK_THROWS_AS(write_report_table(empty, out), InvalidInputError);

  CoverageReport one;
  CoverageCell c;
  c.scenario = "s";
  c.method = "qtl-original";
  c.horizon = 20;
  c.level = 0.9;
  c.coverage = 1.0;
  c.n_trials = 10;
  one.cells = {c};
  std::ostringstream os;
  write_report_csv(one, os);
  int lines = 0;
  for (char ch : os.str()) lines += ch == '\n';
  CHECK(lines == 2);
}

TEST_CASE("method names round trip") {
  for (Method m : all_methods()) {
    CHECK(method_from_name(method_name(m)) == m);
  }
  CHECK_THROWS_AS(method_from_name("qtl"), InvalidInputError);
}

TEST_CASE("differencing is rejected for methods that do not support it") {
  const auto s = test_helpers::ar1_series(260, 0.5, 3);
  MethodConfig cfg;
  cfg.d = 1.0;
  CHECK_THROWS_AS(build_interval(Method::kQtlOriginal, s, 20, 0.9, cfg, 1),
                  InvalidInputError);
  CHECK_THROWS_AS(build_interval(Method::kNaive, s, 20, 0.9, cfg, 1), InvalidInputError);
  CHECK_NOTHROW(build_interval(Method::kCltTdist, s, 20, 0.9, cfg, 1));
}

TEST_CASE("simulation reports are deterministic and thread-count independent") {
  SimConfig cfg;
  cfg.scenarios = {"short-light"};
  cfg.sample_len = 80;
  cfg.horizons = {20};
  cfg.levels = {0.90, 0.67};
  cfg.n_trials = 150;
  cfg.methods = {Method::kQtlOriginal, Method::kCltOriginal, Method::kKernelBoot};
  cfg.bootstrap_reps = 200;
  cfg.base_seed = 11;

  cfg.n_threads = 1;
  const auto a = run_simulation(cfg);
  cfg.n_threads = 4;
  const auto b = run_simulation(cfg);
  REQUIRE(a.cells.size() == b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    CHECK(a.cells[i].coverage == b.cells[i].coverage);
    CHECK(a.cells[i].raw_median_width == b.cells[i].raw_median_width);
    CHECK(a.cells[i].n_skips == b.cells[i].n_skips);
  }

  // nested levels: coverage at 0.90 at least that at 0.67 up to noise
  for (Method m : cfg.methods) {
    const auto* hi = find_cell(a, std::string(method_name(m)), 20, 0.90);
    const auto* lo = find_cell(a, std::string(method_name(m)), 20, 0.67);
    REQUIRE(hi != nullptr);
    REQUIRE(lo != nullptr);
    const double se = std::sqrt(0.25 / cfg.n_trials);
    CHECK(hi->coverage >= lo->coverage - 3.0 * se);
  }
}

TEST_CASE("simulation validates configuration") {
  SimConfig cfg;
  cfg.n_trials = 50;
  CHECK_THROWS_AS(run_simulation(cfg), InvalidInputError);
  cfg.n_trials = 100;
  cfg.horizons = {400};
  CHECK_THROWS_AS(run_simulation(cfg), InvalidInputError);
  cfg.horizons = {20};
  cfg.scenarios = {"nope"};
  CHECK_THROWS_AS(run_simulation(cfg), InvalidInputError);
}

TEST_CASE("poos window arithmetic: T + 3m points give exactly 3 trials") {
  const int t_len = 120, m = 20;
  const auto data = test_helpers::gaussian_series(t_len + 3 * m, 5);
  PoosConfig cfg;
  cfg.window = t_len;
  cfg.horizons = {m};
  cfg.levels = {0.9};
  cfg.methods = {Method::kQtlOriginal};
  const auto report = run_poos_series(data, "test", cfg);
  REQUIRE(report.cells.size() == 1);
  CHECK(report.cells[0].n_trials + report.cells[0].n_skips == 3);

  const auto short_data = test_helpers::gaussian_series(t_len + m - 1, 6);
  CHECK_THROWS_AS(run_poos_series(short_data, "short", cfg), InvalidInputError);
}

TEST_CASE("poos honors an explicit stride") {
  const int t_len = 120, m = 20;
  const auto data = test_helpers::gaussian_series(t_len + 3 * m, 7);
  PoosConfig cfg;
  cfg.window = t_len;
  cfg.horizons = {m};
  cfg.levels = {0.9};
  cfg.methods = {Method::kQtlOriginal};
  cfg.step = 10;
  const auto report = run_poos_series(data, "test", cfg);
  // starts at 0, 10, 20, 30, 40 (start + 140 <= 180)
  CHECK(report.cells[0].n_trials + report.cells[0].n_skips == 5);
}

TEST_CASE("poos is reproducible per seed") {
  const auto data = test_helpers::ar1_series(400, 0.5, 13);
  PoosConfig cfg;
  cfg.window = 200;
  cfg.horizons = {20};
  cfg.levels = {0.9};
  cfg.methods = {Method::kKernelBoot};
  cfg.bootstrap_reps = 200;
  cfg.base_seed = 99;
  const auto a = run_poos_series(data, "x", cfg);
  const auto b = run_poos_series(data, "x", cfg);
  REQUIRE(a.cells.size() == b.cells.size());
  CHECK(a.cells[0].coverage == b.cells[0].coverage);
  CHECK(a.cells[0].raw_median_width == b.cells[0].raw_median_width);
}

TEST_CASE("csv reader: happy path and error reporting") {
  const auto good = write_temp_csv("good", "date,value\n1,1.5\n2,2.5\n3,3.5\n");
  const auto s = read_csv_column(good, "value");
  REQUIRE(s.size() == 3);
  CHECK(s[1] == doctest::Approx(2.5));

  CHECK_THROWS_AS(read_csv_column(good, "missing"), InvalidInputError);
  CHECK_THROWS_AS(read_csv_column("/tmp/lrpi_no_such_file.csv", "value"), IoError);

  const auto bad = write_temp_csv("bad", "date,value\n1,1.5\n2,oops\n");
  CHECK_THROWS_WITH_AS(read_csv_column(bad, "value"),
                       doctest::Contains("row 3"), InvalidInputError);

  const auto na = write_temp_csv("na", "date,value\n1,NA\n");
  CHECK_THROWS_AS(read_csv_column(na, "value"), InvalidInputError);

  const auto ragged = write_temp_csv("ragged", "date,value\n1,2,3\n");
  CHECK_THROWS_AS(read_csv_column(ragged, "value"), InvalidInputError);
}

TEST_CASE("interval containment handles unbounded intervals") {
  Interval pi;
  pi.lower = -std::numeric_limits<double>::infinity();
  pi.upper = std::numeric_limits<double>::infinity();
  CHECK(pi.contains(1e308));
  CHECK(pi.contains(-1e308));
}
