#include "exsym/nelder_mead.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace exsym {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, double step, std::size_t max_evaluations,
                             double ftol) {
  const std::size_t n = x0.size();
  if (n == 0) throw std::invalid_argument("nelder_mead: empty parameter vector");
  if (max_evaluations == 0) throw std::invalid_argument("nelder_mead: zero evaluation budget");

  const double nd = static_cast<double>(n);
  const double reflect = 1.0;
  const double expand = 1.0 + 2.0 / nd;
  const double contract = 0.75 - 1.0 / (2.0 * nd);
  const double shrink = 1.0 - 1.0 / nd;

  std::size_t evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };

  std::vector<std::vector<double>> simplex(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += step;
  std::vector<double> values(n + 1, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i <= n && evals < max_evaluations; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  auto point = [&](const std::vector<double>& centroid, const std::vector<double>& worst,
                   double coeff) {
    std::vector<double> p(n);
    for (std::size_t k = 0; k < n; ++k) p[k] = centroid[k] + coeff * (centroid[k] - worst[k]);
    return p;
  };

  while (evals < max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
    if (values[worst] - values[best] < ftol) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k] / nd;
    }

    auto xr = point(centroid, simplex[worst], reflect);
    double fr = eval(xr);
    if (fr < values[best]) {
      auto xe = point(centroid, simplex[worst], reflect * expand);
      double fe = eval(xe);
      if (fe < fr) {
        simplex[worst] = std::move(xe);
        values[worst] = fe;
      } else {
        simplex[worst] = std::move(xr);
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = std::move(xr);
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    auto xc = point(centroid, simplex[worst], outside ? reflect * contract : -contract);
    double fc = eval(xc);
    if (fc < (outside ? fr : values[worst])) {
      simplex[worst] = std::move(xc);
      values[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n && evals < max_evaluations; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k) {
        simplex[i][k] = simplex[best][k] + shrink * (simplex[i][k] - simplex[best][k]);
      }
      values[i] = eval(simplex[i]);
    }
  }

  auto it = std::min_element(values.begin(), values.end());
  std::size_t idx = static_cast<std::size_t>(it - values.begin());
  return {simplex[idx], *it, evals};
}

}  // namespace exsym
