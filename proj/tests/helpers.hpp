#pragma once

#include <cmath>
#include <vector>

#include "lrpi/rng.hpp"
#include "lrpi/series.hpp"

namespace test_helpers {

inline lrpi::Series gaussian_series(int n, std::uint64_t seed, double sd = 1.0,
                                    double mean = 0.0) {
  lrpi::SplitMix64 rng(seed);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = mean + sd * rng.next_normal();
  return lrpi::Series(std::move(v));
}

inline lrpi::Series ar1_series(int n, double phi, std::uint64_t seed, double sd = 1.0) {
  lrpi::SplitMix64 rng(seed);
  double e = 0.0;
  for (int t = 0; t < 500; ++t) e = phi * e + sd * rng.next_normal();
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) {
    e = phi * e + sd * rng.next_normal();
    x = e;
  }
  return lrpi::Series(std::move(v));
}

inline double sample_mean(const std::vector<double>& x) {
  double acc = 0.0;
  for (double v : x) acc += v;
  return acc / static_cast<double>(x.size());
}

inline double sample_var(const std::vector<double>& x) {
  const double mu = sample_mean(x);
  double acc = 0.0;
  for (double v : x) acc += (v - mu) * (v - mu);
  return acc / static_cast<double>(x.size() - 1);
}

// Hill estimator of the tail index from the top k order statistics of |x|.
inline double hill_tail_index(std::vector<double> x, std::size_t k) {
  for (auto& v : x) v = std::abs(v);
  std::sort(x.begin(), x.end(), std::greater<>());
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) acc += std::log(x[i] / x[k]);
  return static_cast<double>(k) / acc;
}

}  // namespace test_helpers
