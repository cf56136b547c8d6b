#include "lrpi/dgp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lrpi/errors.hpp"

namespace lrpi::dgp {

namespace {

constexpr int kBurnIn = 500;
constexpr double kPi = 3.14159265358979323846;

double draw_mixture(SplitMix64& rng, double sd2) {
  const double z = rng.next_normal();
  return rng.next_double() < 0.5 ? z : sd2 * z;
}

double draw_stable(SplitMix64& rng, double alpha, double scale) {
  const double v = kPi * (rng.next_double() - 0.5);  // (-pi/2, pi/2)
  const double w = rng.next_exponential();
  if (alpha == 1.0) return scale * std::tan(v);
  const double x = std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha) *
                   std::pow(std::cos(v - alpha * v) / w, (1.0 - alpha) / alpha);
  return scale * x;
}

double draw_noise(const DgpSpec& spec, SplitMix64& rng, double sd2) {
  return spec.tail == Tail::kMixtureNormal ? draw_mixture(rng, sd2)
                                           : draw_stable(rng, spec.alpha_stable, 1.0);
}

}  // namespace

DgpSpec DgpSpec::scenario(std::string_view name, double sigma) {
  DgpSpec spec;
  spec.sigma = sigma;
  if (name == "short-light") {
    spec.kind = Kind::kAr1;
    spec.tail = Tail::kMixtureNormal;
    spec.phi = 0.6;
  } else if (name == "long-light") {
    spec.kind = Kind::kLongMemory;
    spec.tail = Tail::kMixtureNormal;
  } else if (name == "short-heavy") {
    spec.kind = Kind::kAr1;
    spec.tail = Tail::kStable;
    spec.phi = 0.6;
  } else if (name == "long-heavy") {
    spec.kind = Kind::kLongMemory;
    spec.tail = Tail::kStable;
  } else {
    throw InvalidInputError("unknown scenario: " + std::string(name));
  }
  return spec;
}

void DgpSpec::validate() const {
  if (!(sigma > 0.0)) throw InvalidInputError("DgpSpec: sigma must be positive");
  if (kind == Kind::kAr1 && !(std::abs(phi) < 1.0)) {
    throw InvalidInputError("DgpSpec: ar1 requires |phi| < 1");
  }
  if (tail == Tail::kStable && !(alpha_stable > 0.0 && alpha_stable <= 2.0)) {
    throw InvalidInputError("DgpSpec: stable tail index must lie in (0, 2]");
  }
  if (tail == Tail::kMixtureNormal && !(mixture_var2 > 0.0)) {
    throw InvalidInputError("DgpSpec: mixture component variance must be positive");
  }
  if (kind == Kind::kLongMemory) {
    if (trunc_len < 1000) {
      throw InvalidInputError("DgpSpec: long-memory truncation must be >= 1000");
    }
    if (!(decay > 0.5)) {
      throw InvalidInputError("DgpSpec: long-memory decay must exceed 0.5");
    }
  }
  if (kind == Kind::kLocalLevel && !(b > 0.0)) {
    throw InvalidInputError("DgpSpec: local-level requires b > 0");
  }
  if (kind == Kind::kLocalToUnity && c < 0.0) {
    throw InvalidInputError("DgpSpec: local-to-unity requires c >= 0");
  }
  if (kind == Kind::kArmaGarch) {
    if (!(std::abs(phi) < 1.0)) throw InvalidInputError("DgpSpec: |phi| < 1 required");
    if (!(omega > 0.0)) throw InvalidInputError("DgpSpec: omega must be positive");
    if (alpha_g < 0.0 || beta_g < 0.0 || alpha_g + beta_g >= 1.0) {
      throw InvalidInputError("DgpSpec: GARCH parameters must satisfy alpha + beta < 1");
    }
  }
}

Series sample_mixture_normal(int n, SplitMix64& rng, double var2) {
  if (n < 1) throw InvalidInputError("sample_mixture_normal: n must be >= 1");
  if (!(var2 > 0.0)) throw InvalidInputError("sample_mixture_normal: var2 must be positive");
  const double sd2 = std::sqrt(var2);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (auto& v : out) v = draw_mixture(rng, sd2);
  return Series(std::move(out));
}

Series sample_stable(int n, double alpha, double scale, SplitMix64& rng) {
  if (n < 1) throw InvalidInputError("sample_stable: n must be >= 1");
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw InvalidInputError("sample_stable: alpha must lie in (0, 2]");
  }
  if (!(scale > 0.0)) throw InvalidInputError("sample_stable: scale must be positive");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (auto& v : out) v = draw_stable(rng, alpha, scale);
  return Series(std::move(out));
}

Series gen_scenario(const DgpSpec& spec, int n, SplitMix64& rng) {
  if (n < 1) throw InvalidInputError("gen_scenario: n must be >= 1");
  spec.validate();

  const double sd2 = std::sqrt(spec.mixture_var2);
  std::vector<double> out(static_cast<std::size_t>(n));

  switch (spec.kind) {
    case Kind::kAr1: {
      double e = 0.0;
      for (int t = 0; t < kBurnIn; ++t) {
        e = spec.phi * e + spec.sigma * draw_noise(spec, rng, sd2);
      }
      for (auto& v : out) {
        e = spec.phi * e + spec.sigma * draw_noise(spec, rng, sd2);
        v = e;
      }
      break;
    }
    case Kind::kLongMemory: {
      const std::size_t k = static_cast<std::size_t>(spec.trunc_len);
      // Weights reversed so the inner product walks both arrays forward.
      std::vector<double> wr(k);
      for (std::size_t j = 0; j < k; ++j) {
        wr[k - 1 - j] = spec.sigma * std::pow(static_cast<double>(j + 1), -spec.decay);
      }
      std::vector<double> eps(k + static_cast<std::size_t>(n));
      for (auto& e : eps) e = draw_noise(spec, rng, sd2);
      for (std::size_t t = 0; t < out.size(); ++t) {
        double acc = 0.0;
        const double* ep = eps.data() + t + 1;
        for (std::size_t j = 0; j < k; ++j) acc += wr[j] * ep[j];
        out[t] = acc;
      }
      break;
    }
    case Kind::kLocalLevel: {
      const double w = 1.0 / (spec.b * n);
      double levels = 0.0;
      for (int t = 0; t < n; ++t) {
        levels += rng.next_normal();
        out[static_cast<std::size_t>(t)] = rng.next_normal() + w * levels;
      }
      break;
    }
    case Kind::kLocalToUnity: {
      const double rho = 1.0 - spec.c / n;
      double y = 0.0;
      for (auto& v : out) {
        y = rho * y + rng.next_normal();
        v = y;
      }
      break;
    }
    case Kind::kArmaGarch:
      return gen_arma_garch(spec.phi, spec.theta, spec.omega, spec.alpha_g, spec.beta_g,
                            n, rng);
  }
  return Series(std::move(out));
}

Series gen_arma_garch(double phi, double theta, double omega, double alpha_g,
                      double beta_g, int n, SplitMix64& rng, Innovation dist,
                      double df) {
  if (n < 1) throw InvalidInputError("gen_arma_garch: n must be >= 1");
  if (!(std::abs(phi) < 1.0)) throw InvalidInputError("gen_arma_garch: |phi| < 1 required");
  if (!(omega > 0.0)) throw InvalidInputError("gen_arma_garch: omega must be positive");
  if (alpha_g < 0.0 || beta_g < 0.0 || alpha_g + beta_g >= 1.0) {
    throw InvalidInputError("gen_arma_garch: need alpha_g + beta_g < 1");
  }
  if (dist == Innovation::kStudentT && !(df > 2.0)) {
    throw InvalidInputError("gen_arma_garch: Student-t df must exceed 2");
  }

  // Unit-variance innovations: t draws are rescaled by sqrt((df - 2) / df).
  // Fractional df is rounded; the simulator only needs integer-df t noise.
  const int idf = std::max(3, static_cast<int>(std::lround(df)));
  const double t_scale =
      dist == Innovation::kStudentT ? std::sqrt((idf - 2.0) / idf) : 1.0;
  auto draw_eps = [&]() {
    if (dist == Innovation::kNormal) return rng.next_normal();
    const double z = rng.next_normal();
    double chi2 = 0.0;
    for (int i = 0; i < idf; ++i) {
      const double g = rng.next_normal();
      chi2 += g * g;
    }
    return t_scale * z / std::sqrt(chi2 / idf);
  };

  const double uncond = alpha_g + beta_g > 0.0 ? omega / (1.0 - alpha_g - beta_g) : omega;
  double sigma2 = uncond;
  double e_prev = 0.0;
  double y = 0.0;

  std::vector<double> out(static_cast<std::size_t>(n));
  for (int t = 0; t < kBurnIn + n; ++t) {
    sigma2 = alpha_g + beta_g > 0.0
                 ? omega + alpha_g * e_prev * e_prev + beta_g * sigma2
                 : omega;
    const double e = std::sqrt(sigma2) * draw_eps();
    y = phi * y + e + theta * e_prev;
    e_prev = e;
    if (t >= kBurnIn) out[static_cast<std::size_t>(t - kBurnIn)] = y;
  }
  return Series(std::move(out));
}

}  // namespace lrpi::dgp
