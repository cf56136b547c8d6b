#pragma once

#include <string_view>

#include "lrpi/rng.hpp"
#include "lrpi/series.hpp"

namespace lrpi::dgp {

enum class Kind { kAr1, kLongMemory, kLocalLevel, kLocalToUnity, kArmaGarch };
enum class Tail { kMixtureNormal, kStable };

// Scenario descriptor. The four benchmark scenarios combine an AR(1) or a
// truncated MA(inf) with weights (j+1)^{-decay} with either mixture-normal or
// symmetric alpha-stable innovations.
struct DgpSpec {
  Kind kind = Kind::kAr1;
  Tail tail = Tail::kMixtureNormal;
  double sigma = 1.0;          // innovation scale
  double phi = 0.0;            // AR(1) coefficient
  double decay = 0.8;          // long-memory weight exponent
  double alpha_stable = 1.5;   // stable tail index
  double mixture_var2 = 1.25;  // variance of the second mixture component
  double b = 1.0;              // local-level persistence weight
  double c = 0.0;              // local-to-unity drift parameter
  int trunc_len = 10000;       // MA(inf) truncation length
  // kArmaGarch route
  double theta = 0.0;
  double omega = 1.0;
  double alpha_g = 0.0;
  double beta_g = 0.0;

  // Named benchmark scenarios: short-light, long-light, short-heavy, long-heavy.
  static DgpSpec scenario(std::string_view name, double sigma = 1.31);

  void validate() const;
};

// i.i.d. draws from 0.5 N(0,1) + 0.5 N(0, var2). The second component's 1.25
// is read as a variance; var2 keeps it configurable.
Series sample_mixture_normal(int n, SplitMix64& rng, double var2 = 1.25);

// i.i.d. symmetric alpha-stable draws via the Chambers-Mallows-Stuck
// transform. alpha = 2 reduces to N(0, 2 scale^2).
Series sample_stable(int n, double alpha, double scale, SplitMix64& rng);

Series gen_scenario(const DgpSpec& spec, int n, SplitMix64& rng);

enum class Innovation { kNormal, kStudentT };

// ARMA(1,1)-GARCH(1,1) path after a 500-observation burn-in. Student-t
// innovations are rescaled to unit variance.
Series gen_arma_garch(double phi, double theta, double omega, double alpha_g,
                      double beta_g, int n, SplitMix64& rng,
                      Innovation dist = Innovation::kNormal, double df = 6.0);

}  // namespace lrpi::dgp
