#include "hamflow/dynamics.hpp"
#include "hamflow/numeric/finite_difference.hpp"

namespace hamflow::dynamics {

double poisson_bracket(const PhaseFunction& a, const PhaseFunction& b, const PhaseState& state) {
  const double h = numeric::fd_step({state.x, state.p});
  const auto d_dx = [&](const PhaseFunction& f) {
    return numeric::central_difference([&](double x) { return f({x, state.p}); }, state.x, h);
  };
  const auto d_dp = [&](const PhaseFunction& f) {
    return numeric::central_difference([&](double p) { return f({state.x, p}); }, state.p, h);
  };
  return d_dx(a) * d_dp(b) - d_dp(a) * d_dx(b);
}

}  // namespace hamflow::dynamics
