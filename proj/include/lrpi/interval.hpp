#pragma once

#include <string>

namespace lrpi {

// A prediction interval for the average of the next horizon_m observations.
// note is non-empty when the estimate degenerated (e.g. zero spread).
struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.0;
  std::string method;
  int horizon_m = 0;
  std::string note;

  double width() const noexcept { return upper - lower; }
  bool contains(double x) const noexcept { return lower <= x && x <= upper; }
};

}  // namespace lrpi
