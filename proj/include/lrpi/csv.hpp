#pragma once

#include <string>

#include "lrpi/series.hpp"

namespace lrpi {

// Reads one numeric column (selected by header name) from a comma-separated
// file. A header row is required, rows are in time order, decimal points
// only; blank or NA cells are rejected with their row number.
Series read_csv_column(const std::string& path, const std::string& column);

}  // namespace lrpi
