#include "lrpi/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "lrpi/errors.hpp"

namespace lrpi::harness {

namespace {

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string cell = line.substr(start, comma == std::string::npos
                                              ? std::string::npos
                                              : comma - start);
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    cells.push_back(std::move(cell));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

}  // namespace

void write_report_csv(const CoverageReport& report, std::ostream& out) {
  if (report.empty()) throw InvalidInputError("write_report_csv: empty report");
  out << "scenario,method,horizon,level,coverage,rel_width,n_trials,n_skips\n";
  for (const auto& c : report.cells) {
    out << c.scenario << ',' << c.method << ',' << c.horizon << ','
        << fmt("%.4g", c.level) << ',' << fmt("%.4f", c.coverage) << ','
        << (c.rel_width ? fmt("%.4f", *c.rel_width) : std::string("NA")) << ','
        << c.n_trials << ',' << c.n_skips << '\n';
  }
}

void write_report_csv(const CoverageReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open output file: " + path);
  write_report_csv(report, out);
  if (!out.good()) throw IoError("failed while writing: " + path);
}

CoverageReport parse_report_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidInputError("report CSV: missing header");
  CoverageReport report;
  long row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv(line);
    if (cells.size() != 8) {
      throw InvalidInputError("report CSV: row " + std::to_string(row) +
                              " must have 8 cells");
    }
    CoverageCell c;
    c.scenario = cells[0];
    c.method = cells[1];
    try {
      c.horizon = std::stoi(cells[2]);
      c.level = std::stod(cells[3]);
      c.coverage = std::stod(cells[4]);
      if (cells[5] != "NA") c.rel_width = std::stod(cells[5]);
      c.n_trials = std::stol(cells[6]);
      c.n_skips = std::stol(cells[7]);
    } catch (const std::exception&) {
      throw InvalidInputError("report CSV: row " + std::to_string(row) +
                              ": malformed numeric cell");
    }
    report.cells.push_back(std::move(c));
  }
  if (report.empty()) throw InvalidInputError("report CSV: no data rows");
  return report;
}

CoverageReport parse_report_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open report file: " + path);
  return parse_report_csv(in);
}

void write_report_table(const CoverageReport& report, std::ostream& out) {
  if (report.empty()) throw InvalidInputError("write_report_table: empty report");

  // Preserve first-appearance order of scenarios/levels/methods/horizons.
  auto ordered_unique = [&](auto pick) {
    std::vector<decltype(pick(report.cells.front()))> keys;
    for (const auto& c : report.cells) {
      const auto k = pick(c);
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
    }
    return keys;
  };
  const auto scenarios = ordered_unique([](const CoverageCell& c) { return c.scenario; });
  const auto levels = ordered_unique([](const CoverageCell& c) { return c.level; });
  const auto methods = ordered_unique([](const CoverageCell& c) { return c.method; });
  auto horizons = ordered_unique([](const CoverageCell& c) { return c.horizon; });
  std::sort(horizons.begin(), horizons.end());

  auto find_cell = [&](const std::string& sc, const std::string& me, int hz,
                       double lv) -> const CoverageCell* {
    for (const auto& c : report.cells) {
      if (c.scenario == sc && c.method == me && c.horizon == hz && c.level == lv) {
        return &c;
      }
    }
    return nullptr;
  };

  for (const auto& sc : scenarios) {
    for (const double lv : levels) {
      out << "scenario " << sc << ", nominal coverage " << fmt("%.4g", lv) << "\n";
      out << std::left << std::setw(14) << "method";
      for (int hz : horizons) out << std::right << std::setw(9) << ("p^ m=" + std::to_string(hz));
      for (int hz : horizons) out << std::right << std::setw(9) << ("w^ m=" + std::to_string(hz));
      for (int hz : horizons) out << std::right << std::setw(10) << ("med m=" + std::to_string(hz));
      out << std::setw(9) << "trials" << std::setw(8) << "skips" << "\n";
      for (const auto& me : methods) {
        long trials = 0, skips = 0;
        bool any = false;
        std::ostringstream p_part, w_part, raw_part;
        for (int hz : horizons) {
          const auto* c = find_cell(sc, me, hz, lv);
          p_part << std::right << std::setw(9) << (c ? fmt("%.2f", 100.0 * c->coverage) : "-");
          w_part << std::right << std::setw(9)
                 << (c && c->rel_width ? fmt("%.2f", *c->rel_width) : (c ? "NA" : "-"));
          raw_part << std::right << std::setw(10)
                   << (c ? fmt("%.4g", c->raw_median_width) : "-");
          if (c) {
            trials = c->n_trials;
            skips += c->n_skips;
            any = true;
          }
        }
        if (!any) continue;
        out << std::left << std::setw(14) << me << p_part.str() << w_part.str()
            << raw_part.str() << std::right << std::setw(9) << trials << std::setw(8)
            << skips << "\n";
      }
      out << "\n";
    }
  }
}

}  // namespace lrpi::harness
