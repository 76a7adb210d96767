#include <cmath>

#include "hamflow/dynamics.hpp"
#include "hamflow/hierarchy.hpp"
#include "hamflow/mechanics.hpp"
#include "hamflow/numeric/finite_difference.hpp"

namespace hamflow::dynamics {

double legendre_residual_j(int j, const KineticState& state, const Potential& potential,
                           const SystemParams& params) {
  const PhaseState ps = to_phase(state, params.mass());
  const double lj =
      hierarchy::lagrangian_j(j, kinetic_energy(ps, params), potential.eval(state.x));
  const double pj = hierarchy::momentum_j(j, ps, potential, params);
  const double hj = hierarchy::hamiltonian_j(j, ps, potential, params);
  return std::abs(lj - (pj * state.xdot - hj));
}

HamiltonResiduals hamilton_identity_residuals(int j, const PhaseState& state,
                                              const Potential& potential,
                                              const SystemParams& params, Partials partials) {
  const double m = params.mass();
  const double vgrad = potential.grad(state.x);
  double dhj_dx = 0.0;
  double dhj_dp = 0.0;
  double dpj_dp = 0.0;

  if (partials == Partials::analytic) {
    const double hn = additive_hamiltonian(state, potential, params);
    const double outer = j * std::pow(hn, j - 1);  // dH_j/dH_N
    dhj_dx = outer * vgrad;
    dhj_dp = outer * state.p / m;
    dpj_dp = hierarchy::momentum_j_dp(j, state, potential, params);
  } else {
    const double h = numeric::fd_step({state.x, state.p});
    const auto hj_at = [&](double x, double p) {
      return hierarchy::hamiltonian_j(j, {x, p}, potential, params);
    };
    dhj_dx = numeric::central_difference([&](double x) { return hj_at(x, state.p); }, state.x, h);
    dhj_dp = numeric::central_difference([&](double p) { return hj_at(state.x, p); }, state.p, h);
    dpj_dp = numeric::central_difference(
        [&](double p) { return hierarchy::momentum_j(j, {state.x, p}, potential, params); },
        state.p, h);
  }
  return {dhj_dx - dpj_dp * vgrad, dhj_dp - dpj_dp * state.p / m};
}

}  // namespace hamflow::dynamics
