#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "lrpi/arma_garch.hpp"
#include "lrpi/dgp.hpp"
#include "lrpi/errors.hpp"

using namespace lrpi;
using test_helpers::sample_mean;
using test_helpers::sample_var;

namespace {

// Hand-built model with known parameters (no fitting).
model::ArmaGarchModel make_model(std::vector<double> phi, std::vector<double> theta,
                                 double omega, double alpha = 0.0, double beta = 0.0) {
  model::ArmaGarchModel m;
  m.phi = std::move(phi);
  m.theta = std::move(theta);
  m.omega = omega;
  m.alpha_g = alpha;
  m.beta_g = beta;
  m.garch = alpha != 0.0 || beta != 0.0;
  m.mean = 0.0;
  m.n_params = 1 + m.p() + m.q() + (m.garch ? 3 : 1);
  m.data.assign(300, 0.0);
  m.residuals.assign(300, 0.0);
  m.cond_var.assign(300, m.garch ? omega / (1.0 - alpha - beta) : omega);
  return m;
}

}  // namespace

TEST_CASE("psi weights of elementary models") {
  const auto ar = model::psi_weights(make_model({0.7}, {}, 1.0), 8);
  for (int j = 0; j < 8; ++j) {
    CHECK(ar.psi[static_cast<std::size_t>(j)] == doctest::Approx(std::pow(0.7, j)));
  }

  const auto ma = model::psi_weights(make_model({}, {0.4}, 1.0), 5);
  CHECK(ma.psi[0] == doctest::Approx(1.0));
  CHECK(ma.psi[1] == doctest::Approx(0.4));
  CHECK(ma.psi[2] == doctest::Approx(0.0));
  CHECK(ma.psi[3] == doctest::Approx(0.0));

  const auto arma = model::psi_weights(make_model({0.5}, {0.3}, 1.0), 6);
  CHECK(arma.psi[0] == doctest::Approx(1.0));
  for (int j = 1; j < 6; ++j) {
    CHECK(arma.psi[static_cast<std::size_t>(j)] ==
          doctest::Approx(std::pow(0.5, j - 1) * 0.8));
  }
}

TEST_CASE("psi weights of a fitted stationary model eventually decay") {
  SplitMix64 rng(3);
  const auto s = dgp::gen_arma_garch(0.6, 0.2, 1.0, 0.0, 0.0, 1000, rng);
  const auto m = model::fit(s, 1, 1, false);
  const auto psi = model::psi_weights(m, 60).psi;
  for (std::size_t j = 10; j + 1 < psi.size(); ++j) {
    CHECK(std::abs(psi[j + 1]) <= std::abs(psi[j]) + 1e-12);
  }
}

TEST_CASE("forecast mean converges to the model mean") {
  auto m = make_model({0.6}, {}, 1.0);
  m.mean = 2.0;
  m.data.back() = 5.0;  // y_T away from the mean
  const auto fc = model::forecast(m, 200);
  CHECK(std::abs(fc.mean.back() - 2.0) < 1e-6);
  // geometric decay toward the mean
  CHECK(fc.mean[0] == doctest::Approx(2.0 + 0.6 * 3.0));
  CHECK(fc.mean[1] == doctest::Approx(2.0 + 0.36 * 3.0));
}

TEST_CASE("garch variance forecast: one-step identity and the long-run limit") {
  auto m = make_model({}, {}, 0.1, 0.1, 0.8);
  m.residuals.back() = 1.4;
  m.cond_var.back() = 0.9;
  const auto fc = model::forecast(m, 300);
  const double one_step = 0.1 + 0.1 * 1.4 * 1.4 + 0.8 * 0.9;
  CHECK(fc.variance[0] == doctest::Approx(one_step).epsilon(1e-12));
  const double uncond = 0.1 / (1.0 - 0.9);
  CHECK(fc.variance[1] ==
        doctest::Approx(uncond + 0.9 * (one_step - uncond)).epsilon(1e-12));
  CHECK(fc.variance.back() == doctest::Approx(uncond).epsilon(1e-6));
}

TEST_CASE("constant-variance models forecast the fitted variance at all horizons") {
  const auto m = make_model({0.5}, {}, 2.25);
  const auto fc = model::forecast(m, 10);
  for (double v : fc.variance) CHECK(v == doctest::Approx(2.25));
}

TEST_CASE("aggregated error sd: closed-form cases") {
  // white noise: sd = sigma / sqrt(m)
  const auto wn = make_model({}, {}, 1.0);
  CHECK(model::agg_error_sd(wn, 25) == doctest::Approx(1.0 / 5.0).epsilon(1e-12));

  // AR(1) phi = 0.5, sigma = 1, m = 2: c_1 = 1.5, c_0 = 1
  const auto ar = make_model({0.5}, {}, 1.0);
  CHECK(model::agg_error_sd(ar, 2) ==
        doctest::Approx(std::sqrt(3.25) / 2.0).epsilon(1e-12));

  // m = 1: the one-step innovation sd
  auto g = make_model({}, {}, 0.1, 0.1, 0.8);
  g.residuals.back() = 0.5;
  g.cond_var.back() = 1.0;
  const double one_step = 0.1 + 0.1 * 0.25 + 0.8 * 1.0;
  CHECK(model::agg_error_sd(g, 1) == doctest::Approx(std::sqrt(one_step)).epsilon(1e-12));
}

TEST_CASE("aggregated error sd matches a brute-force path simulation") {
  // simulate m-step-ahead average prediction errors directly from the
  // recursion (future innovations only, zero history)
  const int m_h = 12;
  for (const auto& [phi, theta] : {std::pair{0.3, 0.0}, {0.6, 0.0}, {0.0, 0.5}}) {
    auto model = make_model(phi != 0.0 ? std::vector<double>{phi} : std::vector<double>{},
                            theta != 0.0 ? std::vector<double>{theta} : std::vector<double>{},
                            1.0);
    const double analytic = model::agg_error_sd(model, m_h);

    SplitMix64 rng(1234);
    const long reps = 200000;
    double acc2 = 0.0;
    for (long r = 0; r < reps; ++r) {
      double d_prev = 0.0, e_prev = 0.0, sum = 0.0;
      for (int h = 0; h < m_h; ++h) {
        const double e = rng.next_normal();
        const double d = phi * d_prev + e + theta * e_prev;
        sum += d;
        d_prev = d;
        e_prev = e;
      }
      const double avg = sum / m_h;
      acc2 += avg * avg;
    }
    const double brute = std::sqrt(acc2 / reps);
    CHECK(brute == doctest::Approx(analytic).epsilon(0.02));
  }
}

TEST_CASE("fit recovers an AR(1) coefficient") {
  SplitMix64 rng(21);
  const auto s = dgp::gen_arma_garch(0.6, 0.0, 1.0, 0.0, 0.0, 5000, rng);
  const auto m = model::fit(s, 1, 0, false);
  CHECK(m.phi[0] > 0.55);
  CHECK(m.phi[0] < 0.65);
  CHECK(m.n_params == 3);
  CHECK(m.aic() == doctest::Approx(-2.0 * m.loglik + 6.0));
}

TEST_CASE("fit recovers GARCH persistence") {
  SplitMix64 rng(22);
  const auto s = dgp::gen_arma_garch(0.0, 0.0, 0.1, 0.1, 0.8, 10000, rng);
  const auto m = model::fit(s, 0, 0, true);
  CHECK(m.alpha_g + m.beta_g > 0.8);
  CHECK(m.alpha_g + m.beta_g < 0.98);
}

TEST_CASE("white-noise fit reduces to sample moments") {
  const auto s = test_helpers::gaussian_series(500, 77, 2.0, 1.0);
  const auto m = model::fit(s, 0, 0, false);
  CHECK(m.mean == doctest::Approx(sample_mean(s.values())));
  const double v = [&] {
    double acc = 0.0;
    for (double x : s.values()) acc += (x - m.mean) * (x - m.mean);
    return acc / static_cast<double>(s.size());
  }();
  CHECK(m.omega == doctest::Approx(v));
}

TEST_CASE("one-step fitted values reproduce the observations through the residuals") {
  SplitMix64 rng(31);
  const auto s = dgp::gen_arma_garch(0.5, 0.3, 1.0, 0.0, 0.0, 400, rng);
  const auto m = model::fit(s, 1, 1, false);
  // replay the recursion: y_hat_{t|t-1} = y_t - e_t identically
  for (std::size_t t = 0; t < s.size(); ++t) {
    double pred = m.mean;
    if (t >= 1) {
      pred += m.phi[0] * (s[t - 1] - m.mean);
      pred += m.theta[0] * m.residuals[t - 1];
    }
    CHECK(pred + m.residuals[t] == doctest::Approx(s[t]).epsilon(1e-10));
  }
}

TEST_CASE("selection prefers dynamic models on strong AR(1) data") {
  int with_ar = 0;
  for (int k = 0; k < 100; ++k) {
    SplitMix64 rng(3000 + static_cast<std::uint64_t>(k));
    const auto s = dgp::gen_arma_garch(0.8, 0.0, 1.0, 0.0, 0.0, 300, rng);
    const auto m = model::select(s);
    if (m.p() >= 1) ++with_ar;
  }
  CHECK(with_ar >= 90);
}

TEST_CASE("selection mostly keeps white noise simple") {
  int plain = 0;
  for (int k = 0; k < 100; ++k) {
    SplitMix64 rng(4000 + static_cast<std::uint64_t>(k));
    const auto s = dgp::gen_arma_garch(0.0, 0.0, 1.0, 0.0, 0.0, 300, rng);
    const auto m = model::select(s);
    if (m.p() == 0 && m.q() == 0) ++plain;
  }
  CHECK(plain >= 60);
}

TEST_CASE("fit validates its inputs") {
  const auto s = test_helpers::gaussian_series(59, 1);
  CHECK_THROWS_AS(model::fit(s, 1, 0, false), InvalidInputError);
  const auto ok = test_helpers::gaussian_series(100, 1);
  CHECK_THROWS_AS(model::fit(ok, 3, 0, false), InvalidInputError);
  CHECK_THROWS_AS(model::psi_weights(make_model({0.5}, {}, 1.0), 0), InvalidInputError);
}

TEST_CASE("innovation df: heavy-tailed residuals get a finite estimate") {
  SplitMix64 rng(8);
  const auto heavy = dgp::gen_arma_garch(0.0, 0.0, 1.0, 0.0, 0.0, 4000, rng,
                                         dgp::Innovation::kStudentT, 5.0);
  const auto m = model::fit(heavy, 0, 0, false);
  CHECK(std::isfinite(m.innov_df));
  CHECK(m.innov_df > 2.5);
  CHECK(m.innov_df < 12.0);
}
