#include "lrpi/dist.hpp"

#include <cmath>
#include <limits>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "lrpi/errors.hpp"

namespace lrpi {

namespace {
const boost::math::normal_distribution<double> kStdNormal(0.0, 1.0);

void check_prob(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidInputError("quantile probability must lie in (0, 1)");
  }
}
}  // namespace

double normal_quantile(double p) {
  check_prob(p);
  return boost::math::quantile(kStdNormal, p);
}

double normal_cdf(double x) { return boost::math::cdf(kStdNormal, x); }

double student_t_quantile(double p, double df) {
  check_prob(p);
  if (!(df > 0.0)) throw InvalidInputError("student_t_quantile: df must be positive");
  if (std::isinf(df) || df > 1e7) return normal_quantile(p);
  const boost::math::students_t_distribution<double> t(df);
  return boost::math::quantile(t, p);
}

}  // namespace lrpi
