#include "lrpi/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lrpi/errors.hpp"

namespace lrpi {

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::span<const double> x0, std::span<const double> step,
                             const NelderMeadOptions& opt) {
  const std::size_t dim = x0.size();
  if (dim == 0) throw InvalidInputError("nelder_mead: empty start point");
  if (step.size() != dim) throw InvalidInputError("nelder_mead: step size mismatch");

  const std::size_t m = dim + 1;
  std::vector<std::vector<double>> simplex(m, std::vector<double>(x0.begin(), x0.end()));
  for (std::size_t i = 1; i < m; ++i) {
    simplex[i][i - 1] += step[i - 1] != 0.0 ? step[i - 1] : 1e-3;
  }
  std::vector<double> fx(m);
  for (std::size_t i = 0; i < m; ++i) fx[i] = f(simplex[i]);

  std::vector<std::size_t> order(m);
  std::vector<double> centroid(dim), trial(dim), trial2(dim);

  NelderMeadResult res;
  int iter = 0;
  for (; iter < opt.max_iter; ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
    const std::size_t best = order[0];
    const std::size_t worst = order[m - 1];
    const std::size_t second_worst = order[m - 2];

    double spread_f = std::abs(fx[worst] - fx[best]);
    double spread_x = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      double lo = simplex[0][j], hi = simplex[0][j];
      for (std::size_t i = 1; i < m; ++i) {
        lo = std::min(lo, simplex[i][j]);
        hi = std::max(hi, simplex[i][j]);
      }
      spread_x = std::max(spread_x, hi - lo);
    }
    if (spread_f < opt.f_tol && spread_x < opt.x_tol) {
      res.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i][j];
    }
    for (auto& c : centroid) c /= static_cast<double>(dim);

    for (std::size_t j = 0; j < dim; ++j) {
      trial[j] = centroid[j] + (centroid[j] - simplex[worst][j]);
    }
    const double f_reflect = f(trial);

    if (f_reflect < fx[best]) {
      for (std::size_t j = 0; j < dim; ++j) {
        trial2[j] = centroid[j] + 2.0 * (centroid[j] - simplex[worst][j]);
      }
      const double f_expand = f(trial2);
      if (f_expand < f_reflect) {
        simplex[worst] = trial2;
        fx[worst] = f_expand;
      } else {
        simplex[worst] = trial;
        fx[worst] = f_reflect;
      }
    } else if (f_reflect < fx[second_worst]) {
      simplex[worst] = trial;
      fx[worst] = f_reflect;
    } else {
      const bool outside = f_reflect < fx[worst];
      for (std::size_t j = 0; j < dim; ++j) {
        const double towards = outside ? trial[j] : simplex[worst][j];
        trial2[j] = centroid[j] + 0.5 * (towards - centroid[j]);
      }
      const double f_contract = f(trial2);
      if (f_contract < std::min(f_reflect, fx[worst])) {
        simplex[worst] = trial2;
        fx[worst] = f_contract;
      } else {
        for (std::size_t i = 0; i < m; ++i) {
          if (i == best) continue;
          for (std::size_t j = 0; j < dim; ++j) {
            simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
          }
          fx[i] = f(simplex[i]);
        }
      }
    }
  }

  const auto it = std::min_element(fx.begin(), fx.end());
  res.x = simplex[static_cast<std::size_t>(it - fx.begin())];
  res.fx = *it;
  res.iterations = iter;
  return res;
}

}  // namespace lrpi
