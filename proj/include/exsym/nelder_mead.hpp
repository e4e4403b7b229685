#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace exsym {

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
};

/// Derivative-free minimization with the dimension-adaptive coefficients of
/// Gao and Han. Stops after `max_evaluations` or when the simplex values
/// spread less than `ftol`.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, double step, std::size_t max_evaluations,
                             double ftol = 1e-15);

}  // namespace exsym
