#include "lrpi/direct_pi.hpp"

#include <algorithm>
#include <cmath>

#include "lrpi/dist.hpp"
#include "lrpi/errors.hpp"
#include "lrpi/fracdiff.hpp"
#include "lrpi/stats.hpp"

namespace lrpi::direct {

namespace {

void check_level(double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw InvalidInputError("interval level must lie in (0, 1)");
  }
}

void check_horizon(int m) {
  if (m < 1) throw InvalidInputError("horizon m must be >= 1");
}

// Aggregation factor mapping the long-run sd of the differenced series to the
// sd of the m-average of the undifferenced one. For d = 1 the factor
// sqrt((m+1)/2) treats the m partial sums as uncorrelated; for d = 0.5 the
// cumulative integration weights enter squared, and the 1/m of the average is
// already absorbed (the caller must not divide by sqrt(m) again).
double scale_for_d(double d, int m) {
  if (d == 0.0) return 1.0 / std::sqrt(static_cast<double>(m));
  if (d == 1.0) {
    return std::sqrt((m + 1.0) / 2.0) / std::sqrt(static_cast<double>(m));
  }
  const auto w = FracCoeffs::integration(d, m).coeffs;
  double acc = 0.0;
  double csum = 0.0;
  // c_i = sum of the first m - i + 1 integration weights, i = m..1.
  std::vector<double> c(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    csum += w[k];
    c[k] = csum;
  }
  for (std::size_t k = 0; k < c.size(); ++k) acc += c[k] * c[k];
  return std::sqrt(acc) / static_cast<double>(m);
}

}  // namespace

void DirectPiConfig::validate() const {
  if (d != 0.0 && d != 0.5 && d != 1.0) {
    throw InvalidInputError("DirectPiConfig: d must be one of {0, 0.5, 1}");
  }
  if (bootstrap_reps < 100) {
    throw InvalidInputError("DirectPiConfig: bootstrap replicates must be >= 100");
  }
  if (bandwidth_mode == BandwidthMode::kFixed && fixed_bandwidth < 0.0) {
    throw InvalidInputError("DirectPiConfig: fixed bandwidth must be >= 0");
  }
  if (block_len_mode == BlockLenMode::kFixed && !(fixed_block_len >= 1.0)) {
    throw InvalidInputError("DirectPiConfig: fixed block length must be >= 1");
  }
}

Interval pi_clt_original(const Series& s, int m, double level, int lag_trunc) {
  check_level(level);
  check_horizon(m);
  if (s.size() < 50) {
    throw InvalidInputError("pi_clt_original: need at least 50 observations");
  }
  const auto [centered, ybar] = demean(s);
  const int k_t = lag_trunc > 0 ? lag_trunc : stats::default_lag_truncation(s.size());
  const auto lrv = stats::lag_window_lrv(centered, k_t);

  Interval pi;
  pi.method = "clt-original";
  pi.level = level;
  pi.horizon_m = m;
  if (lrv.sigma == 0.0) {
    pi.lower = pi.upper = ybar;
    pi.note = lrv.degenerate ? "lag-window variance floored at zero" : "zero spread";
    return pi;
  }
  const double z = normal_quantile(1.0 - (1.0 - level) / 2.0);
  const double hw = z * lrv.sigma / std::sqrt(static_cast<double>(m));
  pi.lower = ybar - hw;
  pi.upper = ybar + hw;
  return pi;
}

Interval pi_qtl_original(const Series& s, int m, double level) {
  check_level(level);
  check_horizon(m);
  const auto n = static_cast<std::int64_t>(s.size());
  if (m > n || n - m + 1 < 20) {
    throw InvalidInputError("pi_qtl_original: need at least 20 rolling windows");
  }
  const auto [centered, ybar] = demean(s);
  auto rolled = rolling_means(centered, m).values();
  std::sort(rolled.begin(), rolled.end());

  const double alpha = 1.0 - level;
  Interval pi;
  pi.method = "qtl-original";
  pi.level = level;
  pi.horizon_m = m;
  pi.lower = ybar + stats::quantile_type7_sorted(rolled, alpha / 2.0);
  pi.upper = ybar + stats::quantile_type7_sorted(rolled, 1.0 - alpha / 2.0);
  if (pi.upper == pi.lower) pi.note = "zero spread";
  return pi;
}

Interval pi_clt_tdist(const Series& s, int m, double level, const DirectPiConfig& cfg) {
  check_level(level);
  check_horizon(m);
  cfg.validate();
  if (s.size() < 50) {
    throw InvalidInputError("pi_clt_tdist: need at least 50 observations");
  }
  const auto [centered, ybar] = demean(s);
  const Series diffed = cfg.d > 0.0 ? frac_diff(centered, cfg.d) : centered;

  const int block = cfg.block_len_mode == BlockLenMode::kFixed
                        ? static_cast<int>(cfg.fixed_block_len)
                        : stats::carlstein_block_length(diffed);
  const auto lrv = stats::subsample_lrv(diffed, block);
  if (lrv.kappa < 3) {
    throw NumericError("pi_clt_tdist: fewer than 3 subsampling blocks (df too small)");
  }

  Interval pi;
  pi.method = "clt-tdist";
  pi.level = level;
  pi.horizon_m = m;
  if (lrv.sigma == 0.0) {
    pi.lower = pi.upper = ybar;
    pi.note = "zero spread";
    return pi;
  }
  const double t = student_t_quantile(1.0 - (1.0 - level) / 2.0, lrv.kappa - 1.0);
  const double hw = t * lrv.sigma * scale_for_d(cfg.d, m);
  pi.lower = ybar - hw;
  pi.upper = ybar + hw;
  return pi;
}

std::vector<double> kernel_boot_means(const Series& s, int m, const DirectPiConfig& cfg,
                                      SplitMix64& rng) {
  check_horizon(m);
  cfg.validate();
  const auto n = static_cast<std::int64_t>(s.size());
  if (m > n || n - m + 1 < 20) {
    throw InvalidInputError("kernel_boot_means: need at least 20 rolling windows");
  }
  const auto [centered, ybar] = demean(s);
  const Series diffed = cfg.d > 0.0 ? frac_diff(centered, cfg.d) : centered;
  if (static_cast<int>(diffed.size()) < m) {
    throw InvalidInputError("kernel_boot_means: differencing leaves fewer than m observations");
  }

  const double block = cfg.block_len_mode == BlockLenMode::kFixed
                           ? cfg.fixed_block_len
                           : stats::optimal_block_length(diffed);
  const stats::BlockPlan plan(std::max(1.0, block));

  std::vector<double> means(static_cast<std::size_t>(cfg.bootstrap_reps));
  for (auto& mb : means) {
    const Series rep = stats::stationary_bootstrap(diffed, plan, rng);
    const Series tail = frac_integrate(rep, cfg.d, m);
    mb = mean_of(tail.view());
  }
  std::sort(means.begin(), means.end());
  return means;
}

Interval kernel_boot_interval_from_means(std::span<const double> sorted_means, double ybar,
                                         int m, double level, const DirectPiConfig& cfg) {
  check_level(level);
  const double alpha = 1.0 - level;
  // Value-space bandwidth for the kernel distribution-function quantiles. The
  // default equals the spread of the replicate means, which keeps the
  // smoothing (and hence the interval width) independent of the replicate
  // count; rank-space bandwidths shrink the tails the larger B gets.
  const double h = cfg.bandwidth_mode == BandwidthMode::kFixed
                       ? cfg.fixed_bandwidth
                       : stats::stddev(sorted_means);

  Interval pi;
  pi.method = "kernel-boot";
  pi.level = level;
  pi.horizon_m = m;
  pi.lower = ybar + stats::kernel_quantile_kde(sorted_means, alpha / 2.0, h);
  pi.upper = ybar + stats::kernel_quantile_kde(sorted_means, 1.0 - alpha / 2.0, h);
  if (pi.upper < pi.lower) std::swap(pi.lower, pi.upper);
  if (pi.upper == pi.lower) pi.note = "zero spread";
  return pi;
}

Interval pi_kernel_boot(const Series& s, int m, double level, const DirectPiConfig& cfg,
                        SplitMix64& rng) {
  check_level(level);
  const double ybar = mean_of(s.view());
  const auto means = kernel_boot_means(s, m, cfg, rng);
  return kernel_boot_interval_from_means(means, ybar, m, level, cfg);
}

}  // namespace lrpi::direct
