#include "lrpi/model_pi.hpp"

#include <algorithm>
#include <cmath>

#include "lrpi/dist.hpp"
#include "lrpi/stats.hpp"

namespace lrpi::model {

namespace {

enum class PathStat { kAverage, kEndpoint };

// Simulates B future paths with innovations drawn i.i.d. from the pool of
// standardized residuals, propagating the mean and GARCH recursions from the
// fitted sample's tail.
std::vector<double> simulate_paths(const ArmaGarchModel& m, int horizon, int reps,
                                   SplitMix64& rng, PathStat stat) {
  const auto n = static_cast<std::int64_t>(m.data.size());
  std::vector<double> pool(m.residuals.size());
  for (std::size_t t = 0; t < pool.size(); ++t) {
    pool[t] = m.residuals[t] / std::sqrt(std::max(m.cond_var[t], 1e-300));
  }

  const int p = m.p();
  const int q = m.q();
  std::vector<double> y_path(static_cast<std::size_t>(horizon));
  std::vector<double> e_path(static_cast<std::size_t>(horizon));
  std::vector<double> out(static_cast<std::size_t>(reps));

  for (auto& collected : out) {
    double sig2_prev = m.cond_var.back();
    double e_prev = m.residuals.back();
    for (int h = 1; h <= horizon; ++h) {
      const double sig2 =
          m.garch ? m.omega + m.alpha_g * e_prev * e_prev + m.beta_g * sig2_prev
                  : m.omega;
      const double e = std::sqrt(std::max(sig2, 0.0)) * pool[rng.next_index(pool.size())];
      double y = m.mean + e;
      for (int i = 1; i <= p; ++i) {
        const int k = h - i;
        const double y_lag = k >= 1 ? y_path[static_cast<std::size_t>(k - 1)]
                                    : m.data[static_cast<std::size_t>(n - 1 + k)];
        y += m.phi[static_cast<std::size_t>(i - 1)] * (y_lag - m.mean);
      }
      for (int j = 1; j <= q; ++j) {
        const int k = h - j;
        const double e_lag = k >= 1 ? e_path[static_cast<std::size_t>(k - 1)]
                                    : m.residuals[static_cast<std::size_t>(n - 1 + k)];
        y += m.theta[static_cast<std::size_t>(j - 1)] * e_lag;
      }
      y_path[static_cast<std::size_t>(h - 1)] = y;
      e_path[static_cast<std::size_t>(h - 1)] = e;
      sig2_prev = sig2;
      e_prev = e;
    }
    collected = stat == PathStat::kAverage ? mean_of(y_path) : y_path.back();
  }
  return out;
}

Interval from_bootstrap(std::vector<double> draws, double level, const char* method,
                        int horizon) {
  std::sort(draws.begin(), draws.end());
  const double alpha = 1.0 - level;
  Interval pi;
  pi.method = method;
  pi.level = level;
  pi.horizon_m = horizon;
  pi.lower = stats::quantile_type7_sorted(draws, alpha / 2.0);
  pi.upper = stats::quantile_type7_sorted(draws, 1.0 - alpha / 2.0);
  if (pi.upper == pi.lower) pi.note = "zero spread";
  return pi;
}

void check_common(int horizon, double level, PiMode mode, int reps, SplitMix64* rng) {
  if (horizon < 1) throw InvalidInputError("horizon must be >= 1");
  if (!(level > 0.0 && level < 1.0)) throw InvalidInputError("level must lie in (0, 1)");
  if (mode == PiMode::kBootstrap) {
    if (reps < 500) throw InvalidInputError("bootstrap requires at least 500 replicates");
    if (rng == nullptr) throw InvalidInputError("bootstrap requires a random generator");
  }
}

}  // namespace

Interval pi_avg_forecasts(const ArmaGarchModel& m, int horizon, double level, PiMode mode,
                          int bootstrap_reps, SplitMix64* rng) {
  check_common(horizon, level, mode, bootstrap_reps, rng);
  if (m.data.empty()) throw InvalidInputError("pi_avg_forecasts: model has no fitted sample");

  if (mode == PiMode::kBootstrap) {
    return from_bootstrap(simulate_paths(m, horizon, bootstrap_reps, *rng, PathStat::kAverage),
                          level, "4cast-boot", horizon);
  }

  const auto fc = forecast(m, horizon);
  const double center = mean_of(fc.mean);
  const double sd = agg_error_sd(m, horizon);
  const double t = student_t_quantile(1.0 - (1.0 - level) / 2.0, m.innov_df);

  Interval pi;
  pi.method = "4cast-anlt";
  pi.level = level;
  pi.horizon_m = horizon;
  pi.lower = center - t * sd;
  pi.upper = center + t * sd;
  if (sd == 0.0) pi.note = "zero spread";
  return pi;
}

Interval pi_avg_series(const Series& s, int horizon, double level, PiMode mode,
                       int bootstrap_reps, SplitMix64* rng) {
  check_common(horizon, level, mode, bootstrap_reps, rng);
  const auto n = static_cast<std::int64_t>(s.size());
  if (n - horizon + 1 < 60) {
    throw InvalidInputError("pi_avg_series: need at least 60 aggregated observations");
  }

  const Series aggregated = rolling_means(s, horizon);
  const ArmaGarchModel m = select(aggregated);

  if (mode == PiMode::kBootstrap) {
    Interval pi = from_bootstrap(
        simulate_paths(m, horizon, bootstrap_reps, *rng, PathStat::kEndpoint), level,
        "series-boot", horizon);
    return pi;
  }

  // m-step-ahead point forecast of the aggregated series and the matching
  // single-step prediction-error sd sum_{j=1..m} psi_{m-j}^2 sigma^2_{T,T+j}.
  const auto fc = forecast(m, horizon);
  const auto psi = psi_weights(m, horizon).psi;
  double var = 0.0;
  for (int j = 1; j <= horizon; ++j) {
    const double w = psi[static_cast<std::size_t>(horizon - j)];
    var += fc.variance[static_cast<std::size_t>(j - 1)] * w * w;
  }
  const double sd = std::sqrt(var);
  const double t = student_t_quantile(1.0 - (1.0 - level) / 2.0, m.innov_df);

  Interval pi;
  pi.method = "series-anlt";
  pi.level = level;
  pi.horizon_m = horizon;
  pi.lower = fc.mean.back() - t * sd;
  pi.upper = fc.mean.back() + t * sd;
  if (sd == 0.0) pi.note = "zero spread";
  return pi;
}

}  // namespace lrpi::model
