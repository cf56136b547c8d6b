#pragma once

#include <limits>
#include <string>
#include <vector>

#include "lrpi/errors.hpp"
#include "lrpi/series.hpp"

namespace lrpi::model {

// Fitted ARMA(p,q)-GARCH(1,1) parameter set, p, q <= 2. alpha_g = beta_g = 0
// encodes a constant conditional variance equal to omega. innov_df is the
// ML-estimated Student-t degrees of freedom of the standardized residuals
// (+inf means Gaussian).
struct ArmaGarchModel {
  std::vector<double> phi;
  std::vector<double> theta;
  double omega = 1.0;
  double alpha_g = 0.0;
  double beta_g = 0.0;
  double mean = 0.0;
  bool garch = false;
  double innov_df = std::numeric_limits<double>::infinity();
  double loglik = 0.0;
  int n_params = 0;
  bool converged = true;
  std::string note;
  std::vector<double> data;       // fitted sample
  std::vector<double> residuals;  // one-step residuals e_t
  std::vector<double> cond_var;   // sigma_t^2

  int p() const noexcept { return static_cast<int>(phi.size()); }
  int q() const noexcept { return static_cast<int>(theta.size()); }
  double aic() const noexcept { return -2.0 * loglik + 2.0 * n_params; }
  double unconditional_var() const noexcept {
    return garch ? omega / (1.0 - alpha_g - beta_g) : omega;
  }
};

struct FitError : NumericError {
  ArmaGarchModel last_iterate;
  FitError(const std::string& what, ArmaGarchModel last)
      : NumericError(what), last_iterate(std::move(last)) {}
};

// Conditional-sum-of-squares ARMA estimate, refined by Gaussian quasi-ML
// jointly with GARCH(1,1) when garch_on. Deterministic given the data
// (simplex restarts use fixed internal seeds).
ArmaGarchModel fit(const Series& s, int p, int q, bool garch_on);

// AIC-minimizing model over p, q in {0,1,2} x garch in {off, on}; ties go to
// the candidate with fewer parameters.
ArmaGarchModel select(const Series& s);

struct PsiWeights {
  std::vector<double> psi;  // causal MA(inf) coefficients, psi[0] = 1
};

PsiWeights psi_weights(const ArmaGarchModel& m, int n);

struct ForecastPath {
  std::vector<double> mean;      // y_hat_{T,T+1..T+h}
  std::vector<double> variance;  // sigma^2_hat_{T,T+1..T+h}
};

// MSE forecasts: mean recursion with future innovations zeroed; innovation
// variance from the closed-form GARCH(1,1) horizon recursion.
ForecastPath forecast(const ArmaGarchModel& m, int horizon);

// Standard deviation of the average m-step prediction error,
// (1/m) sqrt(sum_i (sigma_{T,T+i} c_{m-i})^2) with c_k the cumulative psi sums.
double agg_error_sd(const ArmaGarchModel& m, int horizon);

}  // namespace lrpi::model
