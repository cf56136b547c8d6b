#include "lrpi/arma_garch.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>

#include "lrpi/nelder_mead.hpp"
#include "lrpi/rng.hpp"

namespace lrpi::model {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kPenalty = 1e10;
constexpr double kRegionMargin = 1e-6;
constexpr std::uint64_t kRestartSeed = 0x5EEDF17EULL;  // fixed: fits are deterministic
constexpr int kRestarts = 5;

// Stationarity triangle for AR(2); p <= 1 reduces to |phi_1| < 1.
bool ar_stationary(std::span<const double> phi) {
  const double a1 = phi.size() > 0 ? phi[0] : 0.0;
  const double a2 = phi.size() > 1 ? phi[1] : 0.0;
  return std::abs(a2) < 1.0 - kRegionMargin && a2 + a1 < 1.0 - kRegionMargin &&
         a2 - a1 < 1.0 - kRegionMargin;
}

// Invertibility region of 1 + theta_1 z + theta_2 z^2 (mirror of the AR one).
bool ma_invertible(std::span<const double> theta) {
  const double b1 = theta.size() > 0 ? theta[0] : 0.0;
  const double b2 = theta.size() > 1 ? theta[1] : 0.0;
  return std::abs(b2) < 1.0 - kRegionMargin && b1 + b2 > -1.0 + kRegionMargin &&
         b1 - b2 < 1.0 - kRegionMargin;
}

// One-step residuals with zero presample: e_t = y_t - mu - sum phi_i (y_{t-i}
// - mu) - sum theta_j e_{t-j}.
void filter_residuals(std::span<const double> y, double mu, std::span<const double> phi,
                      std::span<const double> theta, std::vector<double>& e) {
  const std::size_t n = y.size();
  e.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    double pred = mu;
    for (std::size_t i = 0; i < phi.size(); ++i) {
      if (t >= i + 1) pred += phi[i] * (y[t - i - 1] - mu);
    }
    for (std::size_t j = 0; j < theta.size(); ++j) {
      if (t >= j + 1) pred += theta[j] * e[t - j - 1];
    }
    e[t] = y[t] - pred;
  }
}

// sigma_t^2 = omega + alpha e_{t-1}^2 + beta sigma_{t-1}^2, seeded with the
// sample variance of the residuals.
void filter_garch(std::span<const double> e, double omega, double alpha, double beta,
                  std::vector<double>& sig2) {
  const std::size_t n = e.size();
  sig2.resize(n);
  double v0 = 0.0;
  for (double x : e) v0 += x * x;
  v0 = std::max(v0 / static_cast<double>(n), 1e-300);
  sig2[0] = v0;
  for (std::size_t t = 1; t < n; ++t) {
    sig2[t] = omega + alpha * e[t - 1] * e[t - 1] + beta * sig2[t - 1];
  }
}

double gaussian_loglik(std::span<const double> e, std::span<const double> sig2) {
  double ll = 0.0;
  for (std::size_t t = 0; t < e.size(); ++t) {
    ll -= 0.5 * (std::log(2.0 * kPi) + std::log(sig2[t]) + e[t] * e[t] / sig2[t]);
  }
  return ll;
}

struct ParamLayout {
  int p = 0;
  int q = 0;
  bool garch = false;

  std::size_t dim() const {
    return 1 + static_cast<std::size_t>(p) + static_cast<std::size_t>(q) +
           (garch ? 3 : 0);
  }
  void unpack(std::span<const double> x, double& mu, std::span<double> phi,
              std::span<double> theta, double& omega, double& alpha,
              double& beta) const {
    std::size_t k = 0;
    mu = x[k++];
    for (int i = 0; i < p; ++i) phi[static_cast<std::size_t>(i)] = x[k++];
    for (int j = 0; j < q; ++j) theta[static_cast<std::size_t>(j)] = x[k++];
    if (garch) {
      omega = x[k++];
      alpha = x[k++];
      beta = x[k++];
    }
  }
};

// Penalized negative quasi-log-likelihood. Constant-variance models
// concentrate sigma^2 out (CSS); GARCH models evaluate the joint QML.
struct Objective {
  std::span<const double> y;
  ParamLayout layout;
  mutable std::vector<double> e, sig2, phi_buf, theta_buf;

  double operator()(std::span<const double> x) const {
    phi_buf.resize(static_cast<std::size_t>(layout.p));
    theta_buf.resize(static_cast<std::size_t>(layout.q));
    double mu = 0.0, omega = 0.0, alpha = 0.0, beta = 0.0;
    layout.unpack(x, mu, phi_buf, theta_buf, omega, alpha, beta);

    if (!ar_stationary(phi_buf)) return kPenalty * (1.0 + norm1(phi_buf));
    if (!ma_invertible(theta_buf)) return kPenalty * (1.0 + norm1(theta_buf));
    if (layout.garch) {
      if (!(omega > 0.0)) return kPenalty * (1.0 + std::abs(omega));
      if (alpha < 0.0 || beta < 0.0 || alpha + beta > 1.0 - kRegionMargin) {
        return kPenalty * (1.0 + alpha + beta);
      }
    }

    filter_residuals(y, mu, phi_buf, theta_buf, e);
    if (!layout.garch) {
      double rss = 0.0;
      for (double v : e) rss += v * v;
      const double s2 = std::max(rss / static_cast<double>(y.size()), 1e-300);
      const double n = static_cast<double>(y.size());
      return 0.5 * n * (std::log(2.0 * kPi) + std::log(s2) + 1.0);
    }
    filter_garch(e, omega, alpha, beta, sig2);
    return -gaussian_loglik(e, sig2);
  }

  static double norm1(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
  }
};

// Standardized-t log likelihood of unit-variance residuals, used for the
// innovation df estimate.
double t_loglik(std::span<const double> z, double nu) {
  const double n = static_cast<double>(z.size());
  double acc = 0.0;
  for (double v : z) acc += std::log1p(v * v / (nu - 2.0));
  return n * (std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
              0.5 * std::log(kPi * (nu - 2.0))) -
         0.5 * (nu + 1.0) * acc;
}

double estimate_innov_df(std::span<const double> z) {
  // Golden-section on u = log(nu - 2), nu in (2.2, 202).
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = std::log(0.2), hi = std::log(200.0);
  double x1 = hi - gr * (hi - lo);
  double x2 = lo + gr * (hi - lo);
  double f1 = t_loglik(z, 2.0 + std::exp(x1));
  double f2 = t_loglik(z, 2.0 + std::exp(x2));
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = t_loglik(z, 2.0 + std::exp(x2));
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = t_loglik(z, 2.0 + std::exp(x1));
    }
  }
  const double nu = 2.0 + std::exp(0.5 * (lo + hi));
  if (nu > 100.0) return std::numeric_limits<double>::infinity();
  // Only adopt the t density if it actually beats the Gaussian fit.
  double gauss = 0.0;
  for (double v : z) gauss -= 0.5 * (std::log(2.0 * kPi) + v * v);
  return t_loglik(z, nu) > gauss ? nu : std::numeric_limits<double>::infinity();
}

ArmaGarchModel fit_impl(const Series& s, int p, int q, bool garch_on, bool estimate_df) {
  if (s.size() < 60) throw InvalidInputError("fit: need at least 60 observations");
  if (p < 0 || p > 2 || q < 0 || q > 2) {
    throw InvalidInputError("fit: ARMA orders are restricted to p, q <= 2");
  }

  const auto& y = s.values();
  const double ybar = mean_of(y);
  double yvar = 0.0;
  for (double v : y) yvar += (v - ybar) * (v - ybar);
  yvar = std::max(yvar / static_cast<double>(y.size()), 1e-300);

  ArmaGarchModel model;
  model.data = y;
  model.garch = garch_on;
  model.n_params = 1 + p + q + (garch_on ? 3 : 1);

  // Exact shortcut: no dynamic parameters and constant variance.
  if (p == 0 && q == 0 && !garch_on) {
    model.mean = ybar;
    model.omega = yvar;
    model.residuals.resize(y.size());
    model.cond_var.assign(y.size(), yvar);
    for (std::size_t t = 0; t < y.size(); ++t) model.residuals[t] = y[t] - ybar;
    model.loglik = -0.5 * static_cast<double>(y.size()) *
                   (std::log(2.0 * kPi) + std::log(yvar) + 1.0);
    if (estimate_df) {
      std::vector<double> z(model.residuals);
      const double sd = std::sqrt(yvar);
      for (auto& v : z) v /= sd;
      model.innov_df = estimate_innov_df(z);
    }
    return model;
  }

  const double rho1 = [&] {
    double num = 0.0;
    for (std::size_t t = 1; t < y.size(); ++t) {
      num += (y[t] - ybar) * (y[t - 1] - ybar);
    }
    return num / static_cast<double>(y.size()) / yvar;
  }();

  Objective obj;
  obj.y = y;
  obj.layout = {p, q, garch_on};
  const std::size_t dim = obj.layout.dim();

  std::vector<double> x0(dim, 0.0);
  std::vector<double> step(dim, 0.05);
  x0[0] = ybar;
  step[0] = std::max(std::sqrt(yvar) * 0.1, 1e-8);
  if (p > 0) x0[1] = std::clamp(rho1, -0.9, 0.9);
  if (garch_on) {
    const std::size_t g = 1 + static_cast<std::size_t>(p) + static_cast<std::size_t>(q);
    x0[g] = 0.1 * yvar;
    x0[g + 1] = 0.05;
    x0[g + 2] = 0.85;
    step[g] = std::max(0.05 * yvar, 1e-10);
    step[g + 1] = 0.05;
    step[g + 2] = 0.05;
  }

  NelderMeadOptions nm_opt;
  nm_opt.max_iter = 400 * static_cast<int>(dim);

  SplitMix64 restart_rng(kRestartSeed);
  NelderMeadResult best;
  best.fx = std::numeric_limits<double>::infinity();
  auto fn = std::function<double(std::span<const double>)>(
      [&obj](std::span<const double> x) { return obj(x); });

  for (int r = 0; r < kRestarts; ++r) {
    std::vector<double> start = x0;
    if (r > 0) {
      start[0] = ybar + std::sqrt(yvar) * (restart_rng.next_double() - 0.5);
      for (int i = 0; i < p; ++i) {
        start[1 + static_cast<std::size_t>(i)] = restart_rng.next_double() - 0.5;
      }
      for (int j = 0; j < q; ++j) {
        start[1 + static_cast<std::size_t>(p + j)] = restart_rng.next_double() - 0.5;
      }
      if (garch_on) {
        const std::size_t g = 1 + static_cast<std::size_t>(p + q);
        start[g] = yvar * (0.02 + 0.3 * restart_rng.next_double());
        start[g + 1] = 0.3 * restart_rng.next_double();
        start[g + 2] = 0.9 * restart_rng.next_double();
        if (start[g + 1] + start[g + 2] > 0.98) {
          start[g + 2] = 0.98 - start[g + 1];
        }
      }
    }
    const auto res = nelder_mead(fn, start, step, nm_opt);
    if (res.fx < best.fx) best = res;
  }

  if (!std::isfinite(best.fx) || best.fx >= kPenalty) {
    model.converged = false;
    model.note = "optimizer failed to locate a feasible optimum";
    throw FitError("fit: optimization failed", model);
  }

  std::vector<double> phi(static_cast<std::size_t>(p)), theta(static_cast<std::size_t>(q));
  double mu = 0.0, omega = 0.0, alpha = 0.0, beta = 0.0;
  obj.layout.unpack(best.x, mu, phi, theta, omega, alpha, beta);

  // Defensive projection; the penalty keeps iterates inside the region, so
  // this only fires on pathological data.
  while (!ar_stationary(phi)) {
    for (auto& v : phi) v *= 0.95;
    model.note = "AR parameters projected into the stationarity region";
  }
  while (!ma_invertible(theta)) {
    for (auto& v : theta) v *= 0.95;
    model.note = "MA parameters projected into the invertibility region";
  }

  model.mean = mu;
  model.phi = std::move(phi);
  model.theta = std::move(theta);
  filter_residuals(y, model.mean, model.phi, model.theta, model.residuals);
  if (garch_on) {
    model.omega = omega;
    model.alpha_g = alpha;
    model.beta_g = beta;
    filter_garch(model.residuals, omega, alpha, beta, model.cond_var);
    model.loglik = gaussian_loglik(model.residuals, model.cond_var);
  } else {
    double rss = 0.0;
    for (double v : model.residuals) rss += v * v;
    model.omega = std::max(rss / static_cast<double>(y.size()), 0.0);
    const double s2 = std::max(model.omega, 1e-300);
    model.cond_var.assign(y.size(), model.omega);
    model.loglik = -0.5 * static_cast<double>(y.size()) *
                   (std::log(2.0 * kPi) + std::log(s2) + 1.0);
  }
  model.converged = best.converged;
  if (!best.converged) {
    model.note = "simplex iteration budget exhausted";
    throw FitError("fit: simplex failed to converge", model);
  }

  if (estimate_df) {
    std::vector<double> z(model.residuals.size());
    for (std::size_t t = 0; t < z.size(); ++t) {
      z[t] = model.residuals[t] / std::sqrt(std::max(model.cond_var[t], 1e-300));
    }
    model.innov_df = estimate_innov_df(z);
  }
  return model;
}

}  // namespace

ArmaGarchModel fit(const Series& s, int p, int q, bool garch_on) {
  return fit_impl(s, p, q, garch_on, true);
}

ArmaGarchModel select(const Series& s) {
  struct Candidate {
    int p, q;
    bool garch;
    int k;
  };
  std::vector<Candidate> cands;
  for (int garch = 0; garch <= 1; ++garch) {
    for (int p = 0; p <= 2; ++p) {
      for (int q = 0; q <= 2; ++q) {
        cands.push_back({p, q, garch == 1, 1 + p + q + (garch ? 3 : 1)});
      }
    }
  }
  // Stable order by parameter count so an exact AIC tie keeps the smaller model.
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& a, const Candidate& b) { return a.k < b.k; });

  ArmaGarchModel best;
  bool have_best = false;
  std::string last_error;
  for (const auto& c : cands) {
    try {
      ArmaGarchModel m = fit_impl(s, c.p, c.q, c.garch, false);
      if (!have_best || m.aic() < best.aic()) {
        best = std::move(m);
        have_best = true;
      }
    } catch (const NumericError& err) {
      last_error = err.what();
    }
  }
  if (!have_best) {
    throw NumericError("select: every candidate fit failed (" + last_error + ")");
  }

  std::vector<double> z(best.residuals.size());
  for (std::size_t t = 0; t < z.size(); ++t) {
    z[t] = best.residuals[t] / std::sqrt(std::max(best.cond_var[t], 1e-300));
  }
  best.innov_df = estimate_innov_df(z);
  return best;
}

PsiWeights psi_weights(const ArmaGarchModel& m, int n) {
  if (n < 1) throw InvalidInputError("psi_weights: need n >= 1");
  PsiWeights w;
  w.psi.resize(static_cast<std::size_t>(n), 0.0);
  w.psi[0] = 1.0;
  for (int j = 1; j < n; ++j) {
    double acc = j <= m.q() ? m.theta[static_cast<std::size_t>(j - 1)] : 0.0;
    for (int i = 1; i <= std::min(j, m.p()); ++i) {
      acc += m.phi[static_cast<std::size_t>(i - 1)] * w.psi[static_cast<std::size_t>(j - i)];
    }
    w.psi[static_cast<std::size_t>(j)] = acc;
  }
  return w;
}

ForecastPath forecast(const ArmaGarchModel& m, int horizon) {
  if (horizon < 1) throw InvalidInputError("forecast: horizon must be >= 1");
  if (m.data.empty()) throw InvalidInputError("forecast: model has no fitted sample");

  const auto n = static_cast<std::int64_t>(m.data.size());
  ForecastPath out;
  out.mean.resize(static_cast<std::size_t>(horizon));
  out.variance.resize(static_cast<std::size_t>(horizon));

  for (int h = 1; h <= horizon; ++h) {
    double acc = m.mean;
    for (int i = 1; i <= m.p(); ++i) {
      const int k = h - i;  // time T + k
      const double y_lag = k >= 1 ? out.mean[static_cast<std::size_t>(k - 1)]
                                  : m.data[static_cast<std::size_t>(n + k - 1)];
      acc += m.phi[static_cast<std::size_t>(i - 1)] * (y_lag - m.mean);
    }
    for (int j = 1; j <= m.q(); ++j) {
      const int k = h - j;
      if (k <= 0) {  // future innovations have zero mean
        acc += m.theta[static_cast<std::size_t>(j - 1)] *
               m.residuals[static_cast<std::size_t>(n + k - 1)];
      }
    }
    out.mean[static_cast<std::size_t>(h - 1)] = acc;
  }

  if (m.garch) {
    const double uncond = m.unconditional_var();
    const double persist = m.alpha_g + m.beta_g;
    const double e_t = m.residuals.back();
    const double one_step = m.omega + m.alpha_g * e_t * e_t + m.beta_g * m.cond_var.back();
    for (int h = 1; h <= horizon; ++h) {
      out.variance[static_cast<std::size_t>(h - 1)] =
          uncond + std::pow(persist, h - 1) * (one_step - uncond);
    }
  } else {
    std::fill(out.variance.begin(), out.variance.end(), m.omega);
  }
  return out;
}

double agg_error_sd(const ArmaGarchModel& m, int horizon) {
  if (horizon < 1) throw InvalidInputError("agg_error_sd: horizon must be >= 1");
  const auto psi = psi_weights(m, horizon).psi;
  const auto fc = forecast(m, horizon);

  // c_k = psi_0 + ... + psi_k
  std::vector<double> c(psi.size());
  double run = 0.0;
  for (std::size_t k = 0; k < psi.size(); ++k) {
    run += psi[k];
    c[k] = run;
  }

  double acc = 0.0;
  for (int i = 1; i <= horizon; ++i) {
    const double w = c[static_cast<std::size_t>(horizon - i)];
    acc += fc.variance[static_cast<std::size_t>(i - 1)] * w * w;
  }
  return std::sqrt(acc) / static_cast<double>(horizon);
}

}  // namespace lrpi::model
