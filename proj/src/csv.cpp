#include "lrpi/csv.hpp"

#include <charconv>
#include <fstream>
#include <vector>

#include "lrpi/errors.hpp"

namespace lrpi {

namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string cell = line.substr(start, comma == std::string::npos
                                              ? std::string::npos
                                              : comma - start);
    // trim surrounding whitespace and a trailing CR
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!cell.empty() && is_space(cell.front())) cell.erase(cell.begin());
    while (!cell.empty() && is_space(cell.back())) cell.pop_back();
    cells.push_back(std::move(cell));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

}  // namespace

Series read_csv_column(const std::string& path, const std::string& column) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open CSV file: " + path);

  std::string line;
  if (!std::getline(in, line)) {
    throw InvalidInputError(path + ": missing header row");
  }
  const auto header = split_row(line);
  std::size_t col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == column) {
      col = i;
      break;
    }
  }
  if (col == header.size()) {
    throw InvalidInputError(path + ": column '" + column + "' not found in header");
  }

  std::vector<double> values;
  long row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_row(line);
    if (cells.size() != header.size()) {
      throw InvalidInputError(path + ": row " + std::to_string(row) +
                              " has " + std::to_string(cells.size()) +
                              " cells, header has " + std::to_string(header.size()));
    }
    const std::string& cell = cells[col];
    if (cell.empty() || cell == "NA" || cell == "nan" || cell == "NaN") {
      throw InvalidInputError(path + ": row " + std::to_string(row) +
                              ": blank or NA cell in column '" + column + "'");
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
      throw InvalidInputError(path + ": row " + std::to_string(row) +
                              ": cannot parse '" + cell + "' as a number");
    }
    values.push_back(v);
  }
  if (values.empty()) {
    throw InvalidInputError(path + ": no data rows");
  }
  return Series(std::move(values));
}

}  // namespace lrpi
