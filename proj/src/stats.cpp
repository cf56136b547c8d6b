#include "lrpi/stats.hpp"

#include <algorithm>
#include <cmath>

#include "lrpi/errors.hpp"

namespace lrpi::stats {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Flat-top (trapezoidal) lag window.
double flat_top(double t) {
  const double a = std::abs(t);
  if (a <= 0.5) return 1.0;
  if (a <= 1.0) return 2.0 * (1.0 - a);
  return 0.0;
}

}  // namespace

BlockPlan::BlockPlan(double expected_len) {
  if (!(expected_len >= 1.0)) {
    throw InvalidInputError("BlockPlan: expected block length must be >= 1");
  }
  expected_block_len = expected_len;
  geometric_p = 1.0 / expected_len;
}

std::vector<double> autocovariances(std::span<const double> x, int max_lag) {
  const auto n = static_cast<std::int64_t>(x.size());
  if (max_lag < 0 || max_lag >= n) {
    throw InvalidInputError("autocovariances: need 0 <= max_lag < length");
  }
  const double mu = mean_of(x);
  std::vector<double> gamma(static_cast<std::size_t>(max_lag) + 1, 0.0);
  for (int k = 0; k <= max_lag; ++k) {
    double acc = 0.0;
    for (std::int64_t t = 0; t + k < n; ++t) {
      acc += (x[static_cast<std::size_t>(t)] - mu) *
             (x[static_cast<std::size_t>(t + k)] - mu);
    }
    gamma[static_cast<std::size_t>(k)] = acc / static_cast<double>(n);
  }
  return gamma;
}

double quantile_type7_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw InvalidInputError("quantile: empty sample");
  if (p <= 0.0) return sorted.front();
  if (p >= 1.0) return sorted.back();
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const double frac = h - static_cast<double>(lo);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double quantile_type7(std::vector<double> sample, double p) {
  std::sort(sample.begin(), sample.end());
  return quantile_type7_sorted(sample, p);
}

double optimal_block_length(const Series& s) {
  const auto n = static_cast<std::int64_t>(s.size());
  if (n < 50) throw InvalidInputError("optimal_block_length: need at least 50 observations");

  const double log10n = std::log10(static_cast<double>(n));
  const int k_run = std::max(5, static_cast<int>(std::ceil(std::sqrt(log10n))));
  const double thresh = 2.0 * std::sqrt(log10n / static_cast<double>(n));
  const int m_max = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)))) + k_run;

  const auto gamma = autocovariances(s.view(), std::min<int>(m_max + k_run, static_cast<int>(n) - 1));
  if (gamma[0] <= 0.0) return 1.0;  // constant series

  // Bandwidth: first lag followed by k_run insignificant autocorrelations.
  int band = m_max;
  for (int m = 0; m <= m_max; ++m) {
    bool quiet = true;
    for (int j = 1; j <= k_run; ++j) {
      const std::size_t lag = static_cast<std::size_t>(m + j);
      if (lag >= gamma.size() || std::abs(gamma[lag] / gamma[0]) >= thresh) {
        quiet = false;
        break;
      }
    }
    if (quiet) {
      band = m;
      break;
    }
  }
  if (band == 0) return 1.0;

  double g_sum = 0.0;   // sum |k| lambda(k/M) R(k), both tails
  double g0_sum = gamma[0];
  for (int k = 1; k <= band; ++k) {
    const double lam = flat_top(static_cast<double>(k) / band);
    g_sum += 2.0 * lam * k * gamma[static_cast<std::size_t>(k)];
    g0_sum += 2.0 * lam * gamma[static_cast<std::size_t>(k)];
  }
  const double d_sb = 2.0 * g0_sum * g0_sum;
  if (!(d_sb > 0.0) || !(g_sum > 0.0)) return 1.0;

  const double b = std::cbrt(2.0 * g_sum * g_sum / d_sb) *
                   std::cbrt(static_cast<double>(n));
  return std::clamp(b, 1.0, 3.0 * std::sqrt(static_cast<double>(n)));
}

Series stationary_bootstrap(const Series& s, const BlockPlan& plan, SplitMix64& rng) {
  const std::size_t n = s.size();
  if (n < 2) throw InvalidInputError("stationary_bootstrap: need at least two observations");

  std::vector<double> out(n);
  std::size_t idx = rng.next_index(n);
  for (std::size_t t = 0; t < n; ++t) {
    out[t] = s[idx];
    if (rng.next_double() < plan.geometric_p) {
      idx = rng.next_index(n);
    } else {
      idx = idx + 1 == n ? 0 : idx + 1;  // circular wrap
    }
  }
  return Series(std::move(out), s.origin_index());
}

LrvEstimate lag_window_lrv(const Series& s, int lag_trunc) {
  const auto n = static_cast<std::int64_t>(s.size());
  if (lag_trunc < 0 || lag_trunc >= n) {
    throw InvalidInputError("lag_window_lrv: need 0 <= lag_trunc < length");
  }
  const auto gamma = autocovariances(s.view(), lag_trunc);
  double sum = gamma[0];
  for (int k = 1; k <= lag_trunc; ++k) sum += 2.0 * gamma[static_cast<std::size_t>(k)];

  LrvEstimate est;
  est.method = LrvMethod::kLagWindow;
  if (sum < 0.0) {
    est.sigma = 0.0;
    est.degenerate = true;
  } else {
    est.sigma = std::sqrt(sum);
  }
  return est;
}

int carlstein_block_length(const Series& s) {
  const auto n = static_cast<std::int64_t>(s.size());
  if (n < 20) throw InvalidInputError("carlstein_block_length: need at least 20 observations");

  const auto gamma = autocovariances(s.view(), 1);
  const double rho = gamma[0] > 0.0 ? gamma[1] / gamma[0] : 0.0;
  if (std::abs(rho) < 0.05) return 2;

  const double a = 2.0 * rho / (1.0 - rho * rho);
  const double raw = std::cbrt(a * a * 1.5 * static_cast<double>(n));
  const long cap = static_cast<long>(n / 4);
  const long l = std::lround(std::ceil(raw));
  return static_cast<int>(std::max<long>(2, std::min(l, cap)));
}

LrvEstimate subsample_lrv(const Series& s, int block_len) {
  const auto n = static_cast<std::int64_t>(s.size());
  if (block_len < 2 || block_len > n / 2) {
    throw InvalidInputError("subsample_lrv: need 2 <= block length <= length / 2");
  }

  const double mu = mean_of(s.view());
  const std::int64_t l = block_len;
  std::int64_t kappa = (n + l - 1) / l;
  std::int64_t covered = n;
  const std::int64_t tail = n - (kappa - 1) * l;
  if (2 * tail < l) {  // drop a fragment shorter than half a block
    --kappa;
    covered = kappa * l;
  }

  double acc = 0.0;
  for (std::int64_t i = 0; i < kappa; ++i) {
    const std::int64_t lo = i * l;
    const std::int64_t hi = std::min(lo + l, n);
    double block = 0.0;
    for (std::int64_t t = lo; t < hi; ++t) block += s[static_cast<std::size_t>(t)] - mu;
    acc += std::abs(block);
  }

  LrvEstimate est;
  est.method = LrvMethod::kSubsample;
  est.kappa = static_cast<int>(kappa);
  est.sigma = std::sqrt(kPi * l / 2.0) / static_cast<double>(covered) * acc;
  return est;
}

double kernel_quantile(std::span<const double> sample, double q, double h) {
  if (sample.empty()) throw InvalidInputError("kernel_quantile: empty sample");
  if (!(q > 0.0 && q < 1.0)) throw InvalidInputError("kernel_quantile: q must lie in (0, 1)");
  if (h < 0.0) throw InvalidInputError("kernel_quantile: bandwidth must be >= 0");

  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  if (h < 1.0 / static_cast<double>(n)) return quantile_type7_sorted(sorted, q);

  double wsum = 0.0;
  double acc = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double u = (static_cast<double>(i) / static_cast<double>(n) - q) / h;
    if (u <= -1.0 || u >= 1.0) continue;
    const double w = 0.75 * (1.0 - u * u);
    wsum += w;
    acc += w * sorted[i - 1];
  }
  if (wsum <= 0.0) return quantile_type7_sorted(sorted, q);
  return acc / wsum;
}

double kernel_quantile_kde(std::span<const double> sample, double q, double h) {
  if (sample.empty()) throw InvalidInputError("kernel_quantile_kde: empty sample");
  if (!(q > 0.0 && q < 1.0)) {
    throw InvalidInputError("kernel_quantile_kde: q must lie in (0, 1)");
  }
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  if (!(h > 0.0)) return quantile_type7_sorted(sorted, q);

  // Integrated Epanechnikov kernel.
  const auto kernel_cdf = [](double u) {
    if (u <= -1.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return 0.25 * (2.0 + 3.0 * u - u * u * u);
  };
  const auto cdf = [&](double x) {
    double acc = 0.0;
    for (double v : sorted) acc += kernel_cdf((x - v) / h);
    return acc / static_cast<double>(sorted.size());
  };

  double lo = sorted.front() - h;
  double hi = sorted.back() + h;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < q ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double default_quantile_bandwidth(double q, std::size_t n) {
  return std::sqrt(q * (1.0 - q)) * std::pow(static_cast<double>(n), -0.2);
}

double stddev(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double mu = mean_of(x);
  double acc = 0.0;
  for (double v : x) acc += (v - mu) * (v - mu);
  return std::sqrt(acc / static_cast<double>(x.size() - 1));
}

int default_lag_truncation(std::size_t n) {
  return std::max(1, static_cast<int>(std::ceil(std::log10(static_cast<double>(n)))));
}

}  // namespace lrpi::stats
