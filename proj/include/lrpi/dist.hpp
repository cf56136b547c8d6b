#pragma once

namespace lrpi {

double normal_quantile(double p);
double normal_cdf(double x);

// Student-t quantile; df may be fractional. df = +inf falls back to normal.
double student_t_quantile(double p, double df);

}  // namespace lrpi
