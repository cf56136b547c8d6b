#pragma once

#include "lrpi/arma_garch.hpp"
#include "lrpi/interval.hpp"
#include "lrpi/rng.hpp"

namespace lrpi::model {

enum class PiMode { kAnalytic, kBootstrap };

// Interval for the average of the next `horizon` values from a fitted model
// of the raw series: analytic uses the aggregated-error sd with Student-t
// quantiles (ML innovation df, normal when infinite); bootstrap simulates
// future paths with residual resampling (partial scheme: parameters stay at
// their point estimates) and inverts the distribution of the path averages.
Interval pi_avg_forecasts(const ArmaGarchModel& m, int horizon, double level, PiMode mode,
                          int bootstrap_reps = 1000, SplitMix64* rng = nullptr);

// Fits the selected model to the overlapping rolling m-means and forecasts
// that aggregated series m steps ahead, so the target date matches the
// average of the next m raw observations.
Interval pi_avg_series(const Series& s, int horizon, double level, PiMode mode,
                       int bootstrap_reps = 1000, SplitMix64* rng = nullptr);

}  // namespace lrpi::model
