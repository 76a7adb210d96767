#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hamflow/dynamics.hpp"
#include "hamflow/errors.hpp"
#include "hamflow/mechanics.hpp"

namespace hamflow::dynamics {

std::string FlowSpec::label() const {
  switch (kind) {
    case FlowKind::standard:
      return "standard";
    case FlowKind::hierarchy:
      return "j=" + std::to_string(j);
    case FlowKind::multiplicative:
      return "multiplicative";
  }
  return "unknown";
}

FlowSpec parse_flow_spec(std::string_view label) {
  if (label == "standard") return FlowSpec::standard();
  if (label == "multiplicative") return FlowSpec::multiplicative();
  if (label.starts_with("j=")) {
    int j = 0;
    const auto digits = label.substr(2);
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), j);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && j >= 1)
      return FlowSpec::hierarchy(j);
  }
  throw std::invalid_argument("unknown flow '" + std::string(label) +
                              "' (expected standard, multiplicative or j=<n>)");
}

FlowField::FlowField(FlowSpec spec, Potential potential, SystemParams params)
    : spec_(spec), potential_(std::move(potential)), params_(params) {
  if (spec_.kind == FlowKind::hierarchy && spec_.j < 1)
    throw std::invalid_argument("hierarchy flow needs j >= 1");
  if (spec_.kind == FlowKind::multiplicative && params_.lambda().is_infinite())
    throw DomainError("the multiplicative flow needs a finite lambda; use the standard flow");
}

double FlowField::scale_at(const PhaseState& state) const {
  switch (spec_.kind) {
    case FlowKind::standard:
      return 1.0;
    case FlowKind::hierarchy: {
      if (spec_.j == 1) return 1.0;
      const double hn = additive_hamiltonian(state, potential_, params_);
      double out = spec_.j;
      for (int i = 1; i < spec_.j; ++i) out *= hn;
      return out;
    }
    case FlowKind::multiplicative:
      return std::exp(-additive_hamiltonian(state, potential_, params_) / params_.energy_scale());
  }
  return 1.0;
}

PhaseVelocity FlowField::operator()(const PhaseState& state) const {
  const double s = scale_at(state);
  return {s * state.p / params_.mass(), -s * potential_.grad(state.x)};
}

double rate_factor(FlowSpec spec, double energy, const SystemParams& params) {
  switch (spec.kind) {
    case FlowKind::standard:
      return 1.0;
    case FlowKind::hierarchy: {
      if (spec.j < 1) throw std::invalid_argument("hierarchy flow needs j >= 1");
      double out = spec.j;
      for (int i = 1; i < spec.j; ++i) out *= energy;
      return out;
    }
    case FlowKind::multiplicative:
      return std::exp(-energy / params.energy_scale());
  }
  return 1.0;
}

double weighted_rate_factor(int j, double energy, const SystemParams& params) {
  if (j < 1) throw std::invalid_argument("hierarchy flow needs j >= 1");
  if (j == 1) return 1.0;
  if (params.lambda().is_infinite()) return 0.0;
  const double u = -energy / params.energy_scale();
  double out = 1.0;
  for (int i = 1; i < j; ++i) out *= u / i;
  return out;
}

double printed_rate_factor(FlowSpec spec, double energy, const SystemParams& params) {
  switch (spec.kind) {
    case FlowKind::standard:
      return 2.0 * energy;
    case FlowKind::hierarchy: {
      if (spec.j < 1) throw std::invalid_argument("hierarchy flow needs j >= 1");
      if (spec.j == 1) return 2.0 * energy;
      if (params.lambda().is_infinite()) return 0.0;
      const double scale = params.energy_scale();
      double out = 2.0 * energy;
      for (int i = 1; i < spec.j; ++i) out *= energy / scale;
      return out;
    }
    case FlowKind::multiplicative: {
      const double u = energy / params.energy_scale();
      if (!(u < 1.0)) throw DomainError("printed superposition factor diverges for E >= m*lambda^2");
      return 2.0 * energy / (1.0 - u);
    }
  }
  return 0.0;
}

}  // namespace hamflow::dynamics
