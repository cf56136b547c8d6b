#include "lrpi/fracdiff.hpp"

#include "lrpi/errors.hpp"

namespace lrpi {

namespace {

void check_order(double d) {
  if (!(d >= 0.0 && d <= 1.0)) {
    throw InvalidInputError("fractional order d must lie in [0, 1]");
  }
}

std::vector<double> recursion_weights(double signed_d, int len) {
  std::vector<double> w(static_cast<std::size_t>(len));
  w[0] = 1.0;
  for (int j = 1; j < len; ++j) {
    w[static_cast<std::size_t>(j)] =
        w[static_cast<std::size_t>(j - 1)] * ((j - 1 - signed_d) / j);
  }
  return w;
}

}  // namespace

FracCoeffs FracCoeffs::differencing(double d, int len) {
  check_order(d);
  if (len < 1) throw InvalidInputError("FracCoeffs: truncation length must be >= 1");
  if (d == 0.0) return {d, {1.0}, 1};
  if (d == 1.0) {
    if (len == 1) return {d, {1.0}, 1};
    return {d, {1.0, -1.0}, 2};
  }
  return {d, recursion_weights(d, len), len};
}

FracCoeffs FracCoeffs::integration(double d, int len) {
  check_order(d);
  if (len < 1) throw InvalidInputError("FracCoeffs: truncation length must be >= 1");
  if (d == 0.0) return {d, {1.0}, 1};
  return {d, recursion_weights(-d, len), len};
}

Series frac_diff(const Series& s, double d) {
  check_order(d);
  const std::size_t n = s.size();
  if (n < 2) throw InvalidInputError("frac_diff: need at least two observations");

  if (d == 0.0) return s;
  if (d == 1.0) {
    std::vector<double> out(n - 1);
    for (std::size_t t = 1; t < n; ++t) out[t - 1] = s[t] - s[t - 1];
    return Series(std::move(out), s.origin_index() + 1);
  }

  const auto coeffs = FracCoeffs::differencing(d, static_cast<int>(n)).coeffs;
  std::vector<double> out(n);
  for (std::size_t t = 0; t < n; ++t) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= t; ++j) acc += coeffs[j] * s[t - j];
    out[t] = acc;
  }
  return Series(std::move(out), s.origin_index());
}

Series frac_integrate(const Series& s, double d, int window) {
  check_order(d);
  const auto n = static_cast<std::int64_t>(s.size());
  if (window < 1 || window > n) {
    throw InvalidInputError("frac_integrate: window must satisfy 1 <= window <= length");
  }

  const std::size_t off = static_cast<std::size_t>(n - window);
  const std::size_t w = static_cast<std::size_t>(window);
  std::vector<double> out(w);

  if (d == 0.0) {
    for (std::size_t k = 0; k < w; ++k) out[k] = s[off + k];
  } else if (d == 1.0) {
    double acc = 0.0;
    for (std::size_t k = 0; k < w; ++k) {
      acc += s[off + k];
      out[k] = acc;
    }
  } else {
    const auto weights = FracCoeffs::integration(d, window).coeffs;
    for (std::size_t k = 0; k < w; ++k) {
      double acc = 0.0;
      for (std::size_t j = 0; j <= k; ++j) acc += weights[j] * s[off + k - j];
      out[k] = acc;
    }
  }
  return Series(std::move(out), s.origin_index() + static_cast<std::int64_t>(off));
}

}  // namespace lrpi
