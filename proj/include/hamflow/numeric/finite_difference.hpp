#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>

namespace hamflow::numeric {

/// Centered-stencil step 1e-6·max(1, |scales|...).
inline double fd_step(std::initializer_list<double> scales) {
  double s = 1.0;
  for (double v : scales) s = std::max(s, std::abs(v));
  return 1e-6 * s;
}

template <class F>
double central_difference(const F& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace hamflow::numeric
