#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lrpi {

// Ordered, equidistant univariate observations. Construction rejects empty
// and non-finite input. origin_index records the position of values[0]
// relative to the series a transform was derived from (first differences
// start at 1, a length-m rolling mean starts at m-1, and so on).
class Series {
 public:
  explicit Series(std::vector<double> values, std::int64_t origin_index = 0);

  const std::vector<double>& values() const noexcept { return values_; }
  std::span<const double> view() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double front() const noexcept { return values_.front(); }
  double back() const noexcept { return values_.back(); }
  std::int64_t origin_index() const noexcept { return origin_; }

 private:
  std::vector<double> values_;
  std::int64_t origin_ = 0;
};

struct Demeaned {
  Series series;
  double mean;
};

double mean_of(std::span<const double> x);

// Subtracts the sample mean; the returned mean is the estimate added back to
// interval endpoints by every PI constructor.
Demeaned demean(const Series& s);

// Overlapping rolling means with window m: output k is the mean of
// s[k .. k+m-1], so the output has length size - m + 1.
Series rolling_means(const Series& s, int m);

}  // namespace lrpi
