#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "lrpi/dist.hpp"
#include "lrpi/errors.hpp"
#include "lrpi/lowfreq_pi.hpp"

using namespace lrpi;
using test_helpers::gaussian_series;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("cosine columns annihilate constants") {
  const auto proj = lowfreq::cosine_transform(Series(std::vector<double>(200, 4.2)), 12);
  for (double x : proj.x) CHECK(std::abs(x) < 1e-12);
  CHECK(proj.xtx < 1e-20);
}

TEST_CASE("cosine columns are orthonormal under the chosen scaling") {
  const int t_len = 240;
  const int j = 3;
  std::vector<double> col(static_cast<std::size_t>(t_len));
  for (int t = 0; t < t_len; ++t) {
    col[static_cast<std::size_t>(t)] =
        std::sqrt(2.0) * std::cos(j * kPi * (t + 0.5) / t_len);
  }
  const auto proj = lowfreq::cosine_transform(Series(std::move(col)), 8);
  for (int k = 1; k <= 8; ++k) {
    const double expected = k == j ? 1.0 : 0.0;
    CHECK(proj.x[static_cast<std::size_t>(k - 1)] ==
          doctest::Approx(expected).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("projection variance is sigma^2 / T under white noise") {
  const int t_len = 10000;
  const int seeds = 1000;
  double acc = 0.0;
  for (int k = 0; k < seeds; ++k) {
    const auto s = gaussian_series(t_len, 9000 + static_cast<std::uint64_t>(k));
    const auto proj = lowfreq::cosine_transform(s, 1);
    acc += proj.x[0] * proj.x[0];
  }
  const double var = acc / seeds;
  CHECK(var > 0.9 / t_len);
  CHECK(var < 1.1 / t_len);
}

TEST_CASE("pi_naive formula and degenerate input") {
  const auto s = gaussian_series(260, 3);
  const auto proj = lowfreq::cosine_transform(s, 12);
  const auto pi = lowfreq::pi_naive(s, 130, 12, 0.90);
  const double ybar = mean_of(s.view());
  const double scale = std::sqrt((130.0 + 260.0) / (130.0 * 12.0) * proj.xtx);
  const double t = student_t_quantile(0.95, 12.0);
  CHECK(pi.lower == doctest::Approx(ybar - t * scale).epsilon(1e-12));
  CHECK(pi.upper == doctest::Approx(ybar + t * scale).epsilon(1e-12));

  const auto flat = lowfreq::pi_naive(Series(std::vector<double>(100, 1.5)), 10, 12, 0.9);
  CHECK(flat.lower == doctest::Approx(1.5));
  CHECK(flat.upper == doctest::Approx(1.5));
  CHECK(!flat.note.empty());
}

TEST_CASE("location and scale equivariance") {
  const auto s = gaussian_series(260, 41);
  std::vector<double> moved(s.values());
  for (auto& v : moved) v = 2.0 * v + 3.0;
  const auto a = lowfreq::pi_naive(s, 60, 12, 0.9);
  const auto b = lowfreq::pi_naive(Series(std::move(moved)), 60, 12, 0.9);
  CHECK(b.lower == doctest::Approx(2.0 * a.lower + 3.0).epsilon(1e-10));
  CHECK(b.upper == doctest::Approx(2.0 * a.upper + 3.0).epsilon(1e-10));
}

TEST_CASE("width decreases in the horizon and intervals nest across levels") {
  const auto s = gaussian_series(260, 43);
  double prev = 1e300;
  for (int m : {10, 20, 60, 130, 260}) {
    const auto pi = lowfreq::pi_naive(s, m, 12, 0.9);
    CHECK(pi.width() <= prev + 1e-12);
    prev = pi.width();
  }
  const auto p90 = lowfreq::pi_naive(s, 60, 12, 0.90);
  const auto p67 = lowfreq::pi_naive(s, 60, 12, 0.67);
  CHECK(p67.lower >= p90.lower);
  CHECK(p67.upper <= p90.upper);
}

TEST_CASE("white-noise calibration over 2000 trials") {
  // the naive interval is exact for i.i.d. data, so empirical coverage at
  // level 0.90 must sit close to nominal
  const int t_len = 260, m = 130;
  int covered = 0;
  const int trials = 2000;
  for (int i = 0; i < trials; ++i) {
    SplitMix64 rng(50000 + static_cast<std::uint64_t>(i));
    std::vector<double> path(static_cast<std::size_t>(t_len + m));
    for (auto& v : path) v = rng.next_normal();
    double target = 0.0;
    for (int j = 0; j < m; ++j) target += path[static_cast<std::size_t>(t_len + j)];
    target /= m;
    path.resize(static_cast<std::size_t>(t_len));
    const auto pi = lowfreq::pi_naive(Series(std::move(path)), m, 12, 0.90);
    if (pi.contains(target)) ++covered;
  }
  const double cov = static_cast<double>(covered) / trials;
  CHECK(cov > 0.86);
  CHECK(cov < 0.94);
}

TEST_CASE("short-memory dependence degrades coverage only mildly") {
  const int t_len = 260, m = 130;
  int covered = 0;
  const int trials = 2000;
  for (int i = 0; i < trials; ++i) {
    SplitMix64 rng(90000 + static_cast<std::uint64_t>(i));
    double e = 0.0;
    for (int t = 0; t < 500; ++t) e = 0.6 * e + rng.next_normal();
    std::vector<double> path(static_cast<std::size_t>(t_len + m));
    for (auto& v : path) {
      e = 0.6 * e + rng.next_normal();
      v = e;
    }
    double target = 0.0;
    for (int j = 0; j < m; ++j) target += path[static_cast<std::size_t>(t_len + j)];
    target /= m;
    path.resize(static_cast<std::size_t>(t_len));
    const auto pi = lowfreq::pi_naive(Series(std::move(path)), m, 12, 0.90);
    if (pi.contains(target)) ++covered;
  }
  const double cov = static_cast<double>(covered) / trials;
  CHECK(cov > 0.75);
  CHECK(cov < 0.92);
}

TEST_CASE("input validation") {
  const auto s = gaussian_series(100, 1);
  CHECK_THROWS_AS(lowfreq::cosine_transform(s, 0), InvalidInputError);
  CHECK_THROWS_AS(lowfreq::cosine_transform(s, 100), InvalidInputError);
  CHECK_THROWS_AS(lowfreq::pi_naive(s, 0, 12, 0.9), InvalidInputError);
  CHECK_THROWS_AS(lowfreq::pi_naive(s, 10, 12, 1.0), InvalidInputError);
}
