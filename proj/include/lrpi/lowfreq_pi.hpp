#pragma once

#include <vector>

#include "lrpi/interval.hpp"
#include "lrpi/series.hpp"

namespace lrpi::lowfreq {

inline constexpr int kDefaultFrequencies = 12;

// Projections onto the first q discrete cosine columns,
//   X_j = T^{-1} sum_t sqrt(2) cos(j pi (t - 1/2) / T) y_t,
// normalized so Var(X_j) = sigma^2 / T under white noise.
struct CosineProjection {
  int q = 0;
  std::vector<double> x;
  double xtx = 0.0;
};

CosineProjection cosine_transform(const Series& s, int q);

// Student-t(q) interval ybar +- t_q sqrt((m + T) / (m q) X'X). Calibrated
// exactly for i.i.d. data; the projections only carry the low-frequency
// variation, which makes the width robust to high-frequency noise.
Interval pi_naive(const Series& s, int m, int q, double level);

}  // namespace lrpi::lowfreq
