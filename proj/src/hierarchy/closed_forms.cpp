#include <cmath>
#include <numbers>

#include "hamflow/errors.hpp"
#include "hamflow/hierarchy.hpp"
#include "hamflow/mechanics.hpp"
#include "hamflow/numeric/quadrature.hpp"
#include "hamflow/numeric/root_finding.hpp"

namespace hamflow::hierarchy {

namespace {

// Beyond 40 standard deviations the Gaussian tail is below the smallest
// double; integrating further only costs evaluations.
constexpr double kTailCutoff = 40.0;

void require_finite(const SystemParams& params, const char* what) {
  if (params.lambda().is_infinite())
    throw DomainError(std::string(what) +
                      " is undefined for lambda = INFINITE; use the additive form");
}

}  // namespace

double gaussian_velocity_integral(double u, Lambda lambda) {
  if (lambda.is_infinite())
    throw DomainError("gaussian_velocity_integral needs a finite lambda (the limit is u)");
  const double l = lambda.value();
  if (u == 0.0) return 0.0;

  // ∫₀ᵘ e^{−v²/2λ²} dv = λ ∫₀^{u/λ} e^{−s²/2} ds
  const double s_end = std::min(std::abs(u) / l, kTailCutoff);
  const int panels = std::max(1, static_cast<int>(std::ceil(s_end)));
  const double tol = std::max(1e-16, 1e-14 / l) / panels;
  const auto gauss = [](double s) { return std::exp(-0.5 * s * s); };

  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double a = s_end * i / panels;
    const double b = i + 1 == panels ? s_end : s_end * (i + 1) / panels;
    total += numeric::adaptive_simpson(gauss, a, b, tol);
  }
  return std::copysign(l * total, u);
}

double multiplicative_lagrangian(const KineticState& state, const Potential& potential,
                                 const SystemParams& params) {
  require_finite(params, "L_lambda");
  const double l = params.lambda().value();
  const double scale = params.energy_scale();
  const double w = state.xdot * state.xdot / (2.0 * l * l);
  const double g = gaussian_velocity_integral(state.xdot, params.lambda());
  return scale * (std::exp(-w) + state.xdot / (l * l) * g) *
         std::exp(-potential.eval(state.x) / scale);
}

double multiplicative_hamiltonian(const PhaseState& state, const Potential& potential,
                                  const SystemParams& params) {
  require_finite(params, "H_lambda");
  const double scale = params.energy_scale();
  return -scale * std::exp(-additive_hamiltonian(state, potential, params) / scale);
}

double multiplicative_momentum(const KineticState& state, const Potential& potential,
                               const SystemParams& params) {
  require_finite(params, "p_lambda");
  const double scale = params.energy_scale();
  return params.mass() * gaussian_velocity_integral(state.xdot, params.lambda()) *
         std::exp(-potential.eval(state.x) / scale);
}

double shifted_lagrangian(const KineticState& state, const Potential& potential,
                          const SystemParams& params) {
  const double v = potential.eval(state.x);
  if (params.lambda().is_infinite())
    return kinetic_energy(to_phase(state, params.mass()), params) - v;
  const double l = params.lambda().value();
  const double scale = params.energy_scale();
  const double w = state.xdot * state.xdot / (2.0 * l * l);
  const double g = gaussian_velocity_integral(state.xdot, params.lambda());
  return scale * (std::expm1(-w - v / scale) + state.xdot / (l * l) * g * std::exp(-v / scale));
}

double shifted_hamiltonian(const PhaseState& state, const Potential& potential,
                           const SystemParams& params) {
  const double hn = additive_hamiltonian(state, potential, params);
  if (params.lambda().is_infinite()) return hn;
  const double scale = params.energy_scale();
  return -scale * std::expm1(-hn / scale);
}

double lambda_momentum(const KineticState& state, const Potential& potential,
                       const SystemParams& params) {
  if (params.lambda().is_infinite()) return params.mass() * state.xdot;
  return multiplicative_momentum(state, potential, params);
}

double standard_momentum(double x, double p_lambda, const Potential& potential,
                         const SystemParams& params) {
  if (params.lambda().is_infinite()) return p_lambda;
  if (p_lambda == 0.0) return 0.0;
  const double m = params.mass();
  const double l = params.lambda().value();
  const double target = std::abs(p_lambda) * std::exp(potential.eval(x) / params.energy_scale()) / m;
  const double bound = l * std::sqrt(std::numbers::pi / 2.0);
  if (!(target < bound))
    throw DomainError("p_lambda outside the range of the momentum map at this position");

  // G(v) = ∫₀ᵛ e^{−s²/2λ²} ds is increasing with G(v) ≤ v, so v ≥ target.
  double hi = 2.0 * target;
  const auto residual = [&](double v) {
    return gaussian_velocity_integral(v, params.lambda()) - target;
  };
  while (residual(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e3 * l + 1e3 * target)
      throw DomainError("p_lambda too close to the momentum-map bound to invert");
  }
  numeric::RootOptions opts;
  opts.scan_intervals = 1;
  opts.residual_tol = 1e-11 * std::max(1.0, target);
  const auto r = numeric::find_bracketed_root(residual, target, hi, opts);
  return std::copysign(m * r.root, p_lambda);
}

}  // namespace hamflow::hierarchy
