#include "lrpi/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>

#include "lrpi/csv.hpp"
#include "lrpi/dgp.hpp"
#include "lrpi/direct_pi.hpp"
#include "lrpi/errors.hpp"
#include "lrpi/lowfreq_pi.hpp"
#include "lrpi/model_pi.hpp"
#include "lrpi/rng.hpp"
#include "lrpi/stats.hpp"

namespace lrpi::harness {

namespace {

struct MethodNameEntry {
  Method method;
  std::string_view name;
};

constexpr MethodNameEntry kMethodNames[] = {
    {Method::kQtlOriginal, "qtl-original"}, {Method::kCltOriginal, "clt-original"},
    {Method::kCltTdist, "clt-tdist"},       {Method::kKernelBoot, "kernel-boot"},
    {Method::kNaive, "naive"},              {Method::kSeriesAnlt, "series-anlt"},
    {Method::kSeriesBoot, "series-boot"},   {Method::kFcastAnlt, "4cast-anlt"},
    {Method::kFcastBoot, "4cast-boot"},
};

bool supports_differencing(Method m) {
  return m == Method::kCltTdist || m == Method::kKernelBoot;
}

void require_no_d(Method m, double d) {
  if (d != 0.0 && !supports_differencing(m)) {
    throw InvalidInputError(std::string("differencing (d != 0) is only supported for "
                                        "clt-tdist and kernel-boot, not ") +
                            std::string(method_name(m)));
  }
}

// Location shift for trending I(1) series: the center moves from the window
// mean to the last value plus (m+1)/2 times the mean first difference.
double trend_shift_delta(const Series& train, int m) {
  const auto& y = train.values();
  const double mean_diff = (y.back() - y.front()) / static_cast<double>(y.size() - 1);
  const double ybar = mean_of(y);
  return y.back() + 0.5 * (m + 1) * mean_diff - ybar;
}

// Runs body(i) for i in [0, n) on up to `threads` workers; exceptions from
// workers are rethrown on the caller thread.
void parallel_for(long n, int threads, const std::function<void(long)>& body) {
  int hw = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  hw = static_cast<int>(std::min<long>(hw, n));
  if (hw <= 1) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(hw));
  for (int w = 0; w < hw; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (long i = w; i < n; i += hw) body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::uint64_t method_stream(Method method, int horizon) {
  return (static_cast<std::uint64_t>(static_cast<int>(method)) + 1) << 32 |
         static_cast<std::uint64_t>(horizon);
}

// Intervals for every level of one method on one training window, sharing the
// bootstrap sample where the method allows it. Returns one interval per level.
std::vector<Interval> intervals_for_levels(Method method, const Series& train, int m,
                                           std::span<const double> levels,
                                           const MethodConfig& cfg, std::uint64_t seed) {
  std::vector<Interval> out;
  out.reserve(levels.size());

  if (method == Method::kKernelBoot) {
    direct::DirectPiConfig dc;
    dc.d = cfg.d;
    dc.bootstrap_reps = cfg.bootstrap_reps;
    SplitMix64 rng(seed);
    const auto means = direct::kernel_boot_means(train, m, dc, rng);
    const double ybar = mean_of(train.view());
    for (double level : levels) {
      out.push_back(direct::kernel_boot_interval_from_means(means, ybar, m, level, dc));
    }
    if (cfg.trend_shift && cfg.d == 1.0) {
      const double delta = trend_shift_delta(train, m);
      for (auto& pi : out) {
        pi.lower += delta;
        pi.upper += delta;
      }
    }
  } else {
    // build_interval applies the trend shift itself where it is supported.
    for (double level : levels) {
      out.push_back(build_interval(method, train, m, level, cfg, seed));
    }
  }
  return out;
}

struct CellAccumulator {
  long covered = 0;
  long used = 0;
  long skips = 0;
  std::vector<double> widths;
};

void check_levels(const std::vector<double>& levels) {
  if (levels.empty()) throw InvalidInputError("at least one level is required");
  for (double lv : levels) {
    if (!(lv > 0.0 && lv < 1.0)) {
      throw InvalidInputError("levels must lie in (0, 1)");
    }
  }
}

void check_horizons(const std::vector<int>& horizons, int cap) {
  if (horizons.empty()) throw InvalidInputError("at least one horizon is required");
  for (int m : horizons) {
    if (m < 1) throw InvalidInputError("horizons must be >= 1");
    if (m > cap) throw InvalidInputError("horizons must not exceed the sample length");
  }
}

}  // namespace

std::string_view method_name(Method m) {
  for (const auto& e : kMethodNames) {
    if (e.method == m) return e.name;
  }
  throw InvalidInputError("unknown method id");
}

Method method_from_name(std::string_view name) {
  for (const auto& e : kMethodNames) {
    if (e.name == name) return e.method;
  }
  throw InvalidInputError("unknown method: " + std::string(name));
}

std::vector<Method> all_methods() {
  std::vector<Method> out;
  for (const auto& e : kMethodNames) out.push_back(e.method);
  return out;
}

Interval build_interval(Method method, const Series& train, int m, double level,
                        const MethodConfig& cfg, std::uint64_t seed) {
  require_no_d(method, cfg.d);
  switch (method) {
    case Method::kQtlOriginal:
      return direct::pi_qtl_original(train, m, level);
    case Method::kCltOriginal:
      return direct::pi_clt_original(train, m, level);
    case Method::kCltTdist: {
      direct::DirectPiConfig dc;
      dc.d = cfg.d;
      dc.bootstrap_reps = cfg.bootstrap_reps;
      Interval pi = pi_clt_tdist(train, m, level, dc);
      if (cfg.trend_shift && cfg.d == 1.0) {
        const double delta = trend_shift_delta(train, m);
        pi.lower += delta;
        pi.upper += delta;
      }
      return pi;
    }
    case Method::kKernelBoot: {
      direct::DirectPiConfig dc;
      dc.d = cfg.d;
      dc.bootstrap_reps = cfg.bootstrap_reps;
      SplitMix64 rng(seed);
      Interval pi = direct::pi_kernel_boot(train, m, level, dc, rng);
      if (cfg.trend_shift && cfg.d == 1.0) {
        const double delta = trend_shift_delta(train, m);
        pi.lower += delta;
        pi.upper += delta;
      }
      return pi;
    }
    case Method::kNaive:
      return lowfreq::pi_naive(train, m, cfg.lowfreq_q, level);
    case Method::kSeriesAnlt:
      return model::pi_avg_series(train, m, level, model::PiMode::kAnalytic);
    case Method::kSeriesBoot: {
      SplitMix64 rng(seed);
      return model::pi_avg_series(train, m, level, model::PiMode::kBootstrap,
                                  cfg.bootstrap_reps, &rng);
    }
    case Method::kFcastAnlt: {
      const auto fitted = model::select(train);
      return model::pi_avg_forecasts(fitted, m, level, model::PiMode::kAnalytic);
    }
    case Method::kFcastBoot: {
      const auto fitted = model::select(train);
      SplitMix64 rng(seed);
      return model::pi_avg_forecasts(fitted, m, level, model::PiMode::kBootstrap,
                                     cfg.bootstrap_reps, &rng);
    }
  }
  throw InvalidInputError("unknown method id");
}

void SimConfig::validate() const {
  if (scenarios.empty()) throw InvalidInputError("SimConfig: at least one scenario");
  for (const auto& s : scenarios) dgp::DgpSpec::scenario(s, sigma);  // name check
  if (sample_len < 50) throw InvalidInputError("SimConfig: sample length must be >= 50");
  check_horizons(horizons, sample_len);
  check_levels(levels);
  if (n_trials < 100) throw InvalidInputError("SimConfig: n_trials must be >= 100");
  if (methods.empty()) throw InvalidInputError("SimConfig: at least one method");
  for (Method m : methods) require_no_d(m, d);
}

CoverageReport run_simulation(const SimConfig& cfg) {
  cfg.validate();

  const int t_len = cfg.sample_len;
  const int m_max = *std::max_element(cfg.horizons.begin(), cfg.horizons.end());
  const std::size_t n_methods = cfg.methods.size();
  const std::size_t n_horizons = cfg.horizons.size();
  const std::size_t n_levels = cfg.levels.size();

  MethodConfig mc;
  mc.d = cfg.d;
  mc.bootstrap_reps = cfg.bootstrap_reps;

  CoverageReport report;
  for (const auto& scenario : cfg.scenarios) {
    const auto spec = dgp::DgpSpec::scenario(scenario, cfg.sigma);

    // Flat per-trial storage: intervals indexed by (method, horizon, level).
    const std::size_t cells_per_trial = n_methods * n_horizons * n_levels;
    std::vector<double> lowers(cells_per_trial * static_cast<std::size_t>(cfg.n_trials));
    std::vector<double> uppers(cells_per_trial * static_cast<std::size_t>(cfg.n_trials));
    std::vector<std::uint8_t> ok(n_methods * n_horizons *
                                 static_cast<std::size_t>(cfg.n_trials));
    std::vector<double> targets(n_horizons * static_cast<std::size_t>(cfg.n_trials));

    parallel_for(cfg.n_trials, cfg.n_threads, [&](long trial) {
      SplitMix64 path_rng(cfg.base_seed + static_cast<std::uint64_t>(trial));
      const Series path = dgp::gen_scenario(spec, t_len + m_max, path_rng);
      const Series train(
          std::vector<double>(path.values().begin(), path.values().begin() + t_len));

      for (std::size_t mi = 0; mi < n_horizons; ++mi) {
        const int m = cfg.horizons[mi];
        double acc = 0.0;
        for (int j = 0; j < m; ++j) acc += path[static_cast<std::size_t>(t_len + j)];
        targets[static_cast<std::size_t>(trial) * n_horizons + mi] = acc / m;
      }

      for (std::size_t ki = 0; ki < n_methods; ++ki) {
        for (std::size_t mi = 0; mi < n_horizons; ++mi) {
          const int m = cfg.horizons[mi];
          const std::uint64_t seed = SplitMix64::derive(
              cfg.base_seed + static_cast<std::uint64_t>(trial),
              method_stream(cfg.methods[ki], m));
          const std::size_t flag_idx =
              (static_cast<std::size_t>(trial) * n_methods + ki) * n_horizons + mi;
          try {
            const auto pis =
                intervals_for_levels(cfg.methods[ki], train, m, cfg.levels, mc, seed);
            for (std::size_t li = 0; li < n_levels; ++li) {
              const std::size_t idx = flag_idx * n_levels + li;
              lowers[idx] = pis[li].lower;
              uppers[idx] = pis[li].upper;
            }
            ok[flag_idx] = 1;
          } catch (const std::exception&) {
            ok[flag_idx] = 0;  // counted as a skip below
          }
        }
      }
    });

    for (std::size_t ki = 0; ki < n_methods; ++ki) {
      for (std::size_t mi = 0; mi < n_horizons; ++mi) {
        for (std::size_t li = 0; li < n_levels; ++li) {
          CellAccumulator acc;
          std::vector<double> oos(static_cast<std::size_t>(cfg.n_trials));
          for (long trial = 0; trial < cfg.n_trials; ++trial) {
            const double target =
                targets[static_cast<std::size_t>(trial) * n_horizons + mi];
            oos[static_cast<std::size_t>(trial)] = target;
            const std::size_t flag_idx =
                (static_cast<std::size_t>(trial) * n_methods + ki) * n_horizons + mi;
            if (!ok[flag_idx]) {
              ++acc.skips;
              continue;
            }
            const std::size_t idx = flag_idx * n_levels + li;
            ++acc.used;
            if (lowers[idx] <= target && target <= uppers[idx]) ++acc.covered;
            acc.widths.push_back(uppers[idx] - lowers[idx]);
          }

          CoverageCell cell;
          cell.scenario = scenario;
          cell.method = std::string(method_name(cfg.methods[ki]));
          cell.horizon = cfg.horizons[mi];
          cell.level = cfg.levels[li];
          cell.coverage = acc.used > 0 ? static_cast<double>(acc.covered) / acc.used : 0.0;
          cell.n_trials = acc.used;
          cell.n_skips = acc.skips;
          if (!acc.widths.empty()) {
            cell.raw_median_width = stats::quantile_type7(acc.widths, 0.5);
            cell.rel_width = relative_median_width(acc.widths, oos, cfg.levels[li]);
          }
          report.cells.push_back(std::move(cell));
        }
      }
    }
  }
  return report;
}

void PoosConfig::validate() const {
  if (window < 50) throw InvalidInputError("PoosConfig: window must be >= 50");
  check_horizons(horizons, window);
  check_levels(levels);
  if (step < 0) throw InvalidInputError("PoosConfig: step must be >= 0");
  if (methods.empty()) throw InvalidInputError("PoosConfig: at least one method");
  for (const auto& [method, d] : d_per_method) {
    if (d != 0.0 && d != 0.5 && d != 1.0) {
      throw InvalidInputError("PoosConfig: d must be one of {0, 0.5, 1}");
    }
    require_no_d(method, d);
  }
}

CoverageReport run_poos(const PoosConfig& cfg) {
  cfg.validate();
  const Series data = read_csv_column(cfg.csv_path, cfg.column);
  return run_poos_series(data, cfg.column, cfg);
}

CoverageReport run_poos_series(const Series& data, const std::string& label,
                               const PoosConfig& cfg) {
  cfg.validate();
  const auto n = static_cast<long>(data.size());
  const int t_len = cfg.window;

  CoverageReport report;
  for (Method method : cfg.methods) {
    MethodConfig mc;
    mc.bootstrap_reps = cfg.bootstrap_reps;
    mc.trend_shift = cfg.trend_shift;
    if (const auto it = cfg.d_per_method.find(method); it != cfg.d_per_method.end()) {
      mc.d = it->second;
    }

    for (const int m : cfg.horizons) {
      const long step = cfg.step > 0 ? cfg.step : m;
      const long n_windows = n >= t_len + m ? (n - t_len - m) / step + 1 : 0;
      if (n_windows < 1) {
        throw InvalidInputError("run_poos: series shorter than window + horizon");
      }

      std::vector<double> lowers(static_cast<std::size_t>(n_windows) * cfg.levels.size());
      std::vector<double> uppers(lowers.size());
      std::vector<std::uint8_t> ok(static_cast<std::size_t>(n_windows));
      std::vector<double> targets(static_cast<std::size_t>(n_windows));

      parallel_for(n_windows, cfg.n_threads, [&](long w) {
        const long start = w * step;
        const Series train(std::vector<double>(data.values().begin() + start,
                                               data.values().begin() + start + t_len));
        double acc = 0.0;
        for (int j = 0; j < m; ++j) {
          acc += data[static_cast<std::size_t>(start + t_len + j)];
        }
        targets[static_cast<std::size_t>(w)] = acc / m;

        const std::uint64_t seed =
            SplitMix64::derive(cfg.base_seed + static_cast<std::uint64_t>(w),
                               method_stream(method, m));
        try {
          const auto pis = intervals_for_levels(method, train, m, cfg.levels, mc, seed);
          for (std::size_t li = 0; li < cfg.levels.size(); ++li) {
            const std::size_t idx = static_cast<std::size_t>(w) * cfg.levels.size() + li;
            lowers[idx] = pis[li].lower;
            uppers[idx] = pis[li].upper;
          }
          ok[static_cast<std::size_t>(w)] = 1;
        } catch (const std::exception&) {
          ok[static_cast<std::size_t>(w)] = 0;
        }
      });

      for (std::size_t li = 0; li < cfg.levels.size(); ++li) {
        CellAccumulator acc;
        for (long w = 0; w < n_windows; ++w) {
          if (!ok[static_cast<std::size_t>(w)]) {
            ++acc.skips;
            continue;
          }
          const std::size_t idx = static_cast<std::size_t>(w) * cfg.levels.size() + li;
          ++acc.used;
          const double target = targets[static_cast<std::size_t>(w)];
          if (lowers[idx] <= target && target <= uppers[idx]) ++acc.covered;
          acc.widths.push_back(uppers[idx] - lowers[idx]);
        }
        CoverageCell cell;
        cell.scenario = label;
        cell.method = std::string(method_name(method));
        cell.horizon = m;
        cell.level = cfg.levels[li];
        cell.coverage = acc.used > 0 ? static_cast<double>(acc.covered) / acc.used : 0.0;
        cell.n_trials = acc.used;
        cell.n_skips = acc.skips;
        if (!acc.widths.empty()) {
          cell.raw_median_width = stats::quantile_type7(acc.widths, 0.5);
          cell.rel_width = relative_median_width(acc.widths, targets, cfg.levels[li]);
        }
        report.cells.push_back(std::move(cell));
      }
    }
  }
  return report;
}

std::optional<double> relative_median_width(std::span<const double> widths,
                                            std::span<const double> oos_means,
                                            double level) {
  if (widths.empty() || oos_means.empty()) {
    throw InvalidInputError("relative_median_width: empty input");
  }
  const double alpha = 1.0 - level;
  std::vector<double> means(oos_means.begin(), oos_means.end());
  std::sort(means.begin(), means.end());
  const double denom = stats::quantile_type7_sorted(means, 1.0 - alpha / 2.0) -
                       stats::quantile_type7_sorted(means, alpha / 2.0);
  if (!(denom > 0.0)) return std::nullopt;
  const double med = stats::quantile_type7(std::vector<double>(widths.begin(), widths.end()), 0.5);
  return med / denom;
}

}  // namespace lrpi::harness
