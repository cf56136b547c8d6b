#pragma once

#include <functional>
#include <span>
#include <vector>

namespace lrpi {

struct NelderMeadOptions {
  int max_iter = 2000;
  double f_tol = 1e-10;  // absolute spread of simplex values
  double x_tol = 1e-9;   // max coordinate spread of the simplex
};

struct NelderMeadResult {
  std::vector<double> x;
  double fx = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Downhill simplex with standard reflection/expansion/contraction/shrink
// coefficients (1, 2, 0.5, 0.5). The objective may return +inf or very large
// values to express constraints.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::span<const double> x0, std::span<const double> step,
                             const NelderMeadOptions& opt = {});

}  // namespace lrpi
