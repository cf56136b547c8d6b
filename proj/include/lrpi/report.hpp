#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lrpi::harness {

// One (scenario, method, horizon, level) aggregate. rel_width is empty when
// the normalizing inter-quantile range degenerated to zero; raw_median_width
// is shown in the text table but is not part of the CSV schema.
struct CoverageCell {
  std::string scenario;
  std::string method;
  int horizon = 0;
  double level = 0.0;
  double coverage = 0.0;
  std::optional<double> rel_width;
  double raw_median_width = 0.0;
  long n_trials = 0;
  long n_skips = 0;
};

struct CoverageReport {
  std::vector<CoverageCell> cells;

  bool empty() const noexcept { return cells.empty(); }
};

// CSV schema: scenario,method,horizon,level,coverage,rel_width,n_trials,n_skips
// with coverage at 4 decimals and NA for an undefined relative width.
void write_report_csv(const CoverageReport& report, std::ostream& out);
void write_report_csv(const CoverageReport& report, const std::string& path);

CoverageReport parse_report_csv(std::istream& in);
CoverageReport parse_report_csv_file(const std::string& path);

// Per (scenario, level) blocks of methods x horizons, coverage then widths.
void write_report_table(const CoverageReport& report, std::ostream& out);

}  // namespace lrpi::harness
