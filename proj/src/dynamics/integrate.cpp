#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "hamflow/dynamics.hpp"
#include "hamflow/errors.hpp"
#include "hamflow/mechanics.hpp"

namespace hamflow::dynamics {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::rk4:
      return "rk4";
    case Method::leapfrog:
      return "leapfrog";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "rk4") return Method::rk4;
  if (name == "leapfrog") return Method::leapfrog;
  throw std::invalid_argument("unknown integrator method '" + std::string(name) + "'");
}

void IntegratorConfig::validate() const {
  if (!(std::isfinite(dt) && dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (!(std::isfinite(t_end) && t_end > 0.0)) throw std::invalid_argument("t_end must be > 0");
}

namespace {

// Whole steps of size dt before the final (remainder-absorbing) one.
std::size_t whole_steps(const IntegratorConfig& cfg) {
  const double q = cfg.t_end / cfg.dt;
  const auto n = static_cast<std::size_t>(std::floor(q * (1.0 + 1e-12) + 1e-9));
  return n == 0 ? 1 : n;
}

template <class Field>
PhaseState rk4_step(const Field& f, const PhaseState& s, double h) {
  const PhaseVelocity k1 = f(s);
  const PhaseVelocity k2 = f(PhaseState{s.x + 0.5 * h * k1.dx, s.p + 0.5 * h * k1.dp});
  const PhaseVelocity k3 = f(PhaseState{s.x + 0.5 * h * k2.dx, s.p + 0.5 * h * k2.dp});
  const PhaseVelocity k4 = f(PhaseState{s.x + h * k3.dx, s.p + h * k3.dp});
  return {s.x + h / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx),
          s.p + h / 6.0 * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp)};
}

// Kick-drift-kick velocity Verlet for H = p²/2m + V(x).
PhaseState leapfrog_step(const FlowField& f, const PhaseState& s, double h) {
  const auto& v = f.potential();
  const double m = f.params().mass();
  const double p_half = s.p - 0.5 * h * v.grad(s.x);
  const double x = s.x + h * p_half / m;
  return {x, p_half - 0.5 * h * v.grad(x)};
}

template <class Step>
Trajectory run(const Step& step, const PhaseState& start, const IntegratorConfig& cfg,
               double energy, std::string_view label) {
  cfg.validate();
  if (!(std::isfinite(start.x) && std::isfinite(start.p)))
    throw std::invalid_argument("start state must be finite");

  const std::size_t n = whole_steps(cfg);
  std::vector<TrajectorySample> samples;
  samples.reserve(n + 1);
  samples.push_back({0.0, start});

  PhaseState s = start;
  double t_prev = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double t = k == n ? cfg.t_end : static_cast<double>(k) * cfg.dt;
    s = step(s, t - t_prev);
    if (!(std::isfinite(s.x) && std::isfinite(s.p))) {
      std::ostringstream os;
      os << "non-finite state in " << label << " flow after t = " << t_prev;
      throw NumericalBlowUp(os.str(), t_prev);
    }
    samples.push_back({t, s});
    t_prev = t;
  }
  return Trajectory(std::move(samples), energy);
}

}  // namespace

std::size_t IntegratorConfig::sample_count() const {
  validate();
  return whole_steps(*this) + 1;
}

Trajectory integrate(const FlowField& field, const PhaseState& start, const IntegratorConfig& cfg) {
  const double energy = additive_hamiltonian(start, field.potential(), field.params());
  const std::string label = field.spec().label();
  if (cfg.method == Method::leapfrog) {
    if (field.spec().kind != FlowKind::standard)
      throw std::invalid_argument("leapfrog requires the standard (separable) flow");
    return run([&](const PhaseState& s, double h) { return leapfrog_step(field, s, h); }, start,
               cfg, energy, label);
  }
  return run([&](const PhaseState& s, double h) { return rk4_step(field, s, h); }, start, cfg,
             energy, label);
}

Trajectory integrate_field(const VectorField& field, const PhaseState& start,
                           const IntegratorConfig& cfg, double energy, std::string_view label) {
  if (cfg.method != Method::rk4)
    throw std::invalid_argument("generic vector fields are integrated with rk4 only");
  return run([&](const PhaseState& s, double h) { return rk4_step(field, s, h); }, start, cfg,
             energy, label);
}

}  // namespace hamflow::dynamics
