#include "lrpi/lowfreq_pi.hpp"

#include <cmath>

#include "lrpi/dist.hpp"
#include "lrpi/errors.hpp"

namespace lrpi::lowfreq {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

CosineProjection cosine_transform(const Series& s, int q) {
  const auto n = static_cast<std::int64_t>(s.size());
  if (q < 1 || q >= n) {
    throw InvalidInputError("cosine_transform: need 1 <= q < length");
  }
  CosineProjection proj;
  proj.q = q;
  proj.x.resize(static_cast<std::size_t>(q));
  const double root2 = std::sqrt(2.0);
  for (int j = 1; j <= q; ++j) {
    double acc = 0.0;
    for (std::int64_t t = 0; t < n; ++t) {
      acc += root2 * std::cos(j * kPi * (t + 0.5) / static_cast<double>(n)) *
             s[static_cast<std::size_t>(t)];
    }
    proj.x[static_cast<std::size_t>(j - 1)] = acc / static_cast<double>(n);
  }
  for (double v : proj.x) proj.xtx += v * v;
  return proj;
}

Interval pi_naive(const Series& s, int m, int q, double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw InvalidInputError("pi_naive: level must lie in (0, 1)");
  }
  if (m < 1) throw InvalidInputError("pi_naive: horizon m must be >= 1");
  const auto proj = cosine_transform(s, q);
  const double ybar = mean_of(s.view());
  const auto n = static_cast<double>(s.size());

  Interval pi;
  pi.method = "naive";
  pi.level = level;
  pi.horizon_m = m;
  // X'X of a constant series is zero up to rounding residue.
  if (proj.xtx <= 1e-24 * (1.0 + ybar * ybar)) {
    pi.lower = pi.upper = ybar;
    pi.note = "zero spread (X'X = 0)";
    return pi;
  }
  const double scale = std::sqrt((m + n) / (static_cast<double>(m) * q) * proj.xtx);
  const double t = student_t_quantile(1.0 - (1.0 - level) / 2.0, static_cast<double>(q));
  pi.lower = ybar - t * scale;
  pi.upper = ybar + t * scale;
  return pi;
}

}  // namespace lrpi::lowfreq
