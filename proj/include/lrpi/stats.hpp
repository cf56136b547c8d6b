#pragma once

#include <span>
#include <vector>

#include "lrpi/rng.hpp"
#include "lrpi/series.hpp"

namespace lrpi::stats {

// Stationary-bootstrap sampling plan: blocks have geometric length with mean
// expected_block_len, i.e. continuation probability 1 - 1/expected_block_len.
struct BlockPlan {
  double expected_block_len = 1.0;
  double geometric_p = 1.0;

  explicit BlockPlan(double expected_len);
};

enum class LrvMethod { kLagWindow, kSubsample };

struct LrvEstimate {
  double sigma = 0.0;  // long-run standard deviation
  int kappa = 0;       // block count (subsample variant only)
  LrvMethod method = LrvMethod::kLagWindow;
  bool degenerate = false;  // lag-window sum went negative and was floored at 0
};

// Sample autocovariances gamma_0..gamma_max_lag of the demeaned data, 1/T
// normalization.
std::vector<double> autocovariances(std::span<const double> x, int max_lag);

double quantile_type7_sorted(std::span<const double> sorted, double p);
double quantile_type7(std::vector<double> sample, double p);

// Automatic expected block length for the stationary bootstrap:
// b = (2 G^2 / D)^{1/3} T^{1/3} with flat-top lag-window weights over a
// bandwidth chosen from the first run of max(5, ceil(sqrt(log10 T)))
// insignificant autocorrelations. Clamped to [1, 3 sqrt(T)].
double optimal_block_length(const Series& s);

// Resample with uniform block starts and geometric block lengths, wrapping
// circularly at the series end. Output length equals input length.
Series stationary_bootstrap(const Series& s, const BlockPlan& plan, SplitMix64& rng);

// sigma^2 = sum of sample autocovariances over lags -k_T..k_T; a negative sum
// is floored at zero and flagged.
LrvEstimate lag_window_lrv(const Series& s, int lag_trunc);

// Subseries block-length rule from the fitted lag-1 autocorrelation:
// l = ceil(((2 rho / (1 - rho^2))^2 3T/2)^{1/3}), clamped to [2, T/4];
// returns 2 outright when |rho| < 0.05.
int carlstein_block_length(const Series& s);

// sigma = sqrt(pi l / 2) / T' * sum over blocks of |block sum of demeaned
// values|, with kappa = ceil(T/l) non-overlapping blocks. A trailing fragment
// shorter than l/2 is dropped (kappa and the covered length T' adjust).
LrvEstimate subsample_lrv(const Series& s, int block_len);

// Epanechnikov kernel quantile on order statistics: sum of w_i X_(i) with
// w_i proportional to K((i/n - q)/h), weights normalized. h below 1/n falls
// back to the type-7 empirical quantile.
double kernel_quantile(std::span<const double> sample, double q, double h);

// Kernel quantile by inverting the Epanechnikov kernel distribution-function
// estimate; h is in value units (h <= 0 falls back to the type-7 quantile).
// Unlike the order-statistic form above, smoothing here widens both tails.
double kernel_quantile_kde(std::span<const double> sample, double q, double h);

// Normal-reference bandwidth sqrt(q (1-q)) n^{-1/5} for the rank-space form.
double default_quantile_bandwidth(double q, std::size_t n);

double stddev(std::span<const double> x);

// Default lag truncation ceil(log10 T) for the lag-window estimator. The
// truncated (unweighted) sum has no downweighting, so long truncations both
// inflate the variance of the estimate and accumulate the demeaning bias;
// a short window calibrates far better at sample sizes in the hundreds.
int default_lag_truncation(std::size_t n);

}  // namespace lrpi::stats
