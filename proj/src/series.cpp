#include "lrpi/series.hpp"

#include <cmath>
#include <numeric>

#include "lrpi/errors.hpp"

namespace lrpi {

Series::Series(std::vector<double> values, std::int64_t origin_index)
    : values_(std::move(values)), origin_(origin_index) {
  if (values_.empty()) {
    throw InvalidInputError("Series: must contain at least one observation");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw InvalidInputError("Series: all values must be finite");
    }
  }
}

double mean_of(std::span<const double> x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

Demeaned demean(const Series& s) {
  const double m = mean_of(s.view());
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i] - m;
  return {Series(std::move(out), s.origin_index()), m};
}

Series rolling_means(const Series& s, int m) {
  const auto n = static_cast<std::int64_t>(s.size());
  if (m < 1 || m > n) {
    throw InvalidInputError("rolling_means: window must satisfy 1 <= m <= length");
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n - m + 1));
  double acc = 0.0;
  for (std::int64_t i = 0; i < m; ++i) acc += s[static_cast<std::size_t>(i)];
  out.push_back(acc / m);
  for (std::int64_t k = m; k < n; ++k) {
    acc += s[static_cast<std::size_t>(k)] - s[static_cast<std::size_t>(k - m)];
    out.push_back(acc / m);
  }
  return Series(std::move(out), s.origin_index() + m - 1);
}

}  // namespace lrpi
