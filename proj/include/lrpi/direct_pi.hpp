#pragma once

#include <vector>

#include "lrpi/interval.hpp"
#include "lrpi/rng.hpp"
#include "lrpi/series.hpp"

namespace lrpi::direct {

enum class BlockLenMode { kAuto, kFixed };
enum class BandwidthMode { kDefault, kFixed };

struct DirectPiConfig {
  double d = 0.0;  // differencing order, one of {0, 0.5, 1}
  int bootstrap_reps = 1000;
  BandwidthMode bandwidth_mode = BandwidthMode::kDefault;
  double fixed_bandwidth = 0.0;  // value units; default = sd of replicate means
  BlockLenMode block_len_mode = BlockLenMode::kAuto;
  double fixed_block_len = 0.0;
  int lag_trunc = 0;  // 0 = default rule; clt-original only

  void validate() const;
};

// Normal-quantile interval ybar +- z sigma_hat / sqrt(m) with sigma_hat from
// the lag-window long-run variance of the demeaned series.
Interval pi_clt_original(const Series& s, int m, double level, int lag_trunc = 0);

// ybar plus empirical quantiles of the rolling m-means of the demeaned series.
Interval pi_qtl_original(const Series& s, int m, double level);

// Student-t interval with subsample long-run sd: demean, difference by cfg.d,
// take sigma_tilde and the block count kappa from the subsampling estimator
// (Carlstein block length), and use t quantiles with kappa - 1 df. For d > 0
// sigma_tilde is rescaled to the level of the undifferenced series.
Interval pi_clt_tdist(const Series& s, int m, double level, const DirectPiConfig& cfg = {});

// Stationary-bootstrap interval: difference by cfg.d, resample B times,
// reintegrate the last m values of each replicate, and take Epanechnikov
// kernel quantiles of the B tail means.
Interval pi_kernel_boot(const Series& s, int m, double level, const DirectPiConfig& cfg,
                        SplitMix64& rng);

// The sorted B replicate tail means behind pi_kernel_boot; exposed so a
// caller evaluating several levels can reuse one bootstrap run.
std::vector<double> kernel_boot_means(const Series& s, int m, const DirectPiConfig& cfg,
                                      SplitMix64& rng);

// Builds the kernel-boot interval from an already computed replicate-mean
// sample (must be sorted ascending).
Interval kernel_boot_interval_from_means(std::span<const double> sorted_means, double ybar,
                                         int m, double level, const DirectPiConfig& cfg);

}  // namespace lrpi::direct
