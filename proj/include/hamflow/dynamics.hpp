#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "hamflow/potential.hpp"
#include "hamflow/state.hpp"
#include "hamflow/system.hpp"

namespace hamflow::dynamics {

using PhaseFunction = std::function<double(const PhaseState&)>;

/// {A, B} = ∂A/∂x ∂B/∂p − ∂A/∂p ∂B/∂x by centered differences with step
/// 1e-6·max(1, |x|, |p|).
double poisson_bracket(const PhaseFunction& a, const PhaseFunction& b, const PhaseState& state);

/// |L_j − (p_j ẋ − H_j)| at T = mẋ²/2, p = mẋ.
double legendre_residual_j(int j, const KineticState& state, const Potential& potential,
                           const SystemParams& params);

enum class Partials { analytic, finite_difference };

struct HamiltonResiduals {
  double r_x = 0.0;
  double r_p = 0.0;
};

/// Residuals of ∂H_j/∂x = −(∂p_j/∂p)ṗ and ∂H_j/∂p = (∂p_j/∂p)ẋ with the
/// on-shell values ẋ = p/m, ṗ = −V'(x):
///   r_x = ∂H_j/∂x − (∂p_j/∂p) V'(x),   r_p = ∂H_j/∂p − (∂p_j/∂p) p/m.
HamiltonResiduals hamilton_identity_residuals(int j, const PhaseState& state,
                                              const Potential& potential,
                                              const SystemParams& params,
                                              Partials partials = Partials::analytic);

enum class FlowKind { standard, hierarchy, multiplicative };

/// Which Hamiltonian generates a flow: H_N, H_j or H_λ.
struct FlowSpec {
  FlowKind kind = FlowKind::standard;
  int j = 1;

  static FlowSpec standard() { return {FlowKind::standard, 1}; }
  static FlowSpec hierarchy(int j) { return {FlowKind::hierarchy, j}; }
  static FlowSpec multiplicative() { return {FlowKind::multiplicative, 1}; }

  /// "standard", "j=<n>" or "multiplicative".
  std::string label() const;

  friend bool operator==(const FlowSpec&, const FlowSpec&) = default;
};

/// Inverse of FlowSpec::label. Throws std::invalid_argument.
FlowSpec parse_flow_spec(std::string_view label);

struct PhaseVelocity {
  double dx = 0.0;
  double dp = 0.0;
};

/// Hamiltonian vector field ({x, H}, {p, H}). Every supported H is a function
/// of H_N, so each field is the standard one (p/m, −V') times dH/dH_N:
/// 1 for H_N, j·H_N^{j−1} for H_j, e^{−H_N/mλ²} for H_λ.
class FlowField {
 public:
  /// Throws std::invalid_argument for j < 1 and DomainError for a
  /// multiplicative field with λ = INFINITE.
  FlowField(FlowSpec spec, Potential potential, SystemParams params);

  PhaseVelocity operator()(const PhaseState& state) const;
  /// dH/dH_N at this state.
  double scale_at(const PhaseState& state) const;

  const FlowSpec& spec() const noexcept { return spec_; }
  const Potential& potential() const noexcept { return potential_; }
  const SystemParams& params() const noexcept { return params_; }

 private:
  FlowSpec spec_;
  Potential potential_;
  SystemParams params_;
};

inline FlowField flow_field(FlowSpec spec, const Potential& potential, const SystemParams& params) {
  return {spec, potential, params};
}

enum class Method { rk4, leapfrog };

std::string_view to_string(Method method);
Method parse_method(std::string_view name);

struct IntegratorConfig {
  Method method = Method::rk4;
  double dt = 1e-3;
  double t_end = 1.0;

  /// Throws std::invalid_argument unless dt > 0 and t_end > 0.
  void validate() const;
  /// Number of samples integrate() produces: floor(t_end/dt) + 1 (at least 2).
  std::size_t sample_count() const;
};

/// Fixed-step integration. Samples sit at t = k·dt for k < N and at t_end,
/// N = floor(t_end/dt); the last step absorbs the remainder.
///
/// Throws std::invalid_argument for leapfrog on a non-standard field (it is
/// only symplectic for separable H) and NumericalBlowUp when a step yields a
/// non-finite state.
Trajectory integrate(const FlowField& field, const PhaseState& start, const IntegratorConfig& cfg);

using VectorField = std::function<PhaseVelocity(const PhaseState&)>;

/// rk4 integration of an arbitrary field on the same sampling grid as
/// integrate(). `energy` is recorded as the trajectory's energy.
Trajectory integrate_field(const VectorField& field, const PhaseState& start,
                           const IntegratorConfig& cfg, double energy,
                           std::string_view label = "vector-field");

/// Time-rescaling factor relating a flow to the standard one on the energy
/// shell E: j·E^{j−1} for H_j, e^{−E/mλ²} for H_λ, 1 for H_N.
double rate_factor(FlowSpec spec, double energy, const SystemParams& params);

/// The same factor with the hierarchy weight (1/j!)(−1/mλ²)^{j−1} folded in:
/// (1/(j−1)!)(−E/mλ²)^{j−1}. Summed over j it gives e^{−E/mλ²}; every j > 1
/// vanishes as λ → ∞.
double weighted_rate_factor(int j, double energy, const SystemParams& params);

/// The factor as printed alongside the superposition formula:
/// 2E^j/(mλ²)^{j−1} for H_j, and its sum over j, 2E/(1 − E/mλ²), for H_λ.
/// Kept for comparison reports only.
double printed_rate_factor(FlowSpec spec, double energy, const SystemParams& params);

enum class RateConvention { derived, printed };

/// Max over samples of `a` of the distance to the piecewise-linear curve
/// through the samples of `b` in the (x, p) plane.
double coincidence_metric(const Trajectory& a, const Trajectory& b);

/// Integrates `spec`'s flow for t_end and the standard flow for
/// rate·t_end, returns the distance between the terminal states.
double rescaling_check(FlowSpec spec, const Potential& potential, const SystemParams& params,
                       const PhaseState& start, const IntegratorConfig& cfg,
                       RateConvention convention = RateConvention::derived);

/// max_k |H_N(state_k) − traj.energy()|.
double energy_drift(const Trajectory& traj, const Potential& potential, const SystemParams& params);

}  // namespace hamflow::dynamics
