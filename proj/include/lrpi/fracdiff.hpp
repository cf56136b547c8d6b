#pragma once

#include <vector>

#include "lrpi/series.hpp"

namespace lrpi {

// Binomial-series weights of (1 - L)^d (differencing) and (1 - L)^{-d}
// (integration), built by the multiplicative recursion
//   c_0 = 1,  c_j = c_{j-1} (j - 1 -+ d) / j,
// which is stable for truncation lengths up to 1e5 and beyond.
struct FracCoeffs {
  double d = 0.0;
  std::vector<double> coeffs;
  int truncation_len = 0;

  static FracCoeffs differencing(double d, int len);
  static FracCoeffs integration(double d, int len);
};

// (1 - L)^d applied to s. d = 0 is the identity, d = 1 drops the first
// observation and returns first differences; for 0 < d < 1 the filter runs on
// an expanding window (no observations are dropped).
Series frac_diff(const Series& s, double d);

// (1 - L)^{-d} applied to the trailing sub-series of length `window`,
// treating the window start as the start of history. For d in {0, 1} this is
// the identity resp. the cumulative sum over the window, and
// frac_integrate(frac_diff(s, d), d, full) inverts frac_diff exactly.
Series frac_integrate(const Series& s, double d, int window);

}  // namespace lrpi
