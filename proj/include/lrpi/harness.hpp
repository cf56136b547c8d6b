#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lrpi/interval.hpp"
#include "lrpi/report.hpp"
#include "lrpi/series.hpp"

namespace lrpi::harness {

enum class Method {
  kQtlOriginal = 0,
  kCltOriginal = 1,
  kCltTdist = 2,
  kKernelBoot = 3,
  kNaive = 4,
  kSeriesAnlt = 5,
  kSeriesBoot = 6,
  kFcastAnlt = 7,
  kFcastBoot = 8,
};

std::string_view method_name(Method m);
Method method_from_name(std::string_view name);
std::vector<Method> all_methods();

// Per-method knobs shared by the drivers and the one-shot CLI path.
struct MethodConfig {
  double d = 0.0;          // differencing order; clt-tdist / kernel-boot only
  int bootstrap_reps = 1000;
  int lowfreq_q = 12;      // cosine frequencies for the naive method
  bool trend_shift = false;  // recenter d=1 intervals for trending series
};

// Builds one interval. Stochastic methods are seeded explicitly so results
// are reproducible and independent of scheduling.
Interval build_interval(Method method, const Series& train, int m, double level,
                        const MethodConfig& cfg, std::uint64_t seed);

struct SimConfig {
  std::vector<std::string> scenarios = {"short-light", "long-light", "short-heavy",
                                        "long-heavy"};
  int sample_len = 260;  // T
  std::vector<int> horizons = {20, 30, 40, 60, 90, 130};
  double sigma = 1.31;
  std::vector<double> levels = {0.90, 0.67};
  int n_trials = 10000;
  std::vector<Method> methods = {Method::kQtlOriginal, Method::kKernelBoot,
                                 Method::kCltOriginal, Method::kCltTdist};
  std::uint64_t base_seed = 1;
  int bootstrap_reps = 1000;
  double d = 0.0;
  int n_threads = 0;  // 0 = hardware concurrency

  void validate() const;
};

// Coverage experiment: per trial i (seeded base_seed + i) generate T + max(m)
// scenario observations, build each method's intervals from the first T, and
// test containment of the realized mean of the next m. Method failures are
// counted as skips, never silently dropped. The report is identical for any
// thread count.
CoverageReport run_simulation(const SimConfig& cfg);

struct PoosConfig {
  std::string csv_path;
  std::string column;
  int window = 260;  // T
  std::vector<int> horizons = {20, 30, 40, 60, 90, 130};
  std::vector<double> levels = {0.90, 0.67};
  int step = 0;  // rolling stride; 0 = horizon (windows overlap in T - m)
  std::map<Method, double> d_per_method;
  std::vector<Method> methods = {Method::kKernelBoot, Method::kCltTdist};
  int bootstrap_reps = 1000;
  std::uint64_t base_seed = 1;
  int n_threads = 0;
  bool trend_shift = false;

  void validate() const;
};

// Rolling pseudo-out-of-sample evaluation over a real series: windows of
// length `window` slide with stride = horizon, each builds intervals and is
// scored against the realized mean of the next m observations.
CoverageReport run_poos(const PoosConfig& cfg);
CoverageReport run_poos_series(const Series& data, const std::string& label,
                               const PoosConfig& cfg);

// median(|U - L|) / (Q(1 - a/2) - Q(a/2)) of the realized out-of-sample
// means; empty when that inter-quantile range is zero.
std::optional<double> relative_median_width(std::span<const double> widths,
                                            std::span<const double> oos_means,
                                            double level);

}  // namespace lrpi::harness
