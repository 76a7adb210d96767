#pragma once

#include <vector>

namespace hamflow {

/// Phase-space point ξ = (x, p).
struct PhaseState {
  double x = 0.0;
  double p = 0.0;

  friend constexpr bool operator==(const PhaseState&, const PhaseState&) = default;
};

/// Configuration-space point (x, ẋ).
struct KineticState {
  double x = 0.0;
  double xdot = 0.0;

  friend constexpr bool operator==(const KineticState&, const KineticState&) = default;
};

inline PhaseState to_phase(const KineticState& s, double mass) { return {s.x, mass * s.xdot}; }
inline KineticState to_kinetic(const PhaseState& s, double mass) { return {s.x, s.p / mass}; }

struct TrajectorySample {
  double t = 0.0;
  PhaseState state;
};

/// Time-ordered phase-space samples plus the H_N value of the first sample.
class Trajectory {
 public:
  /// Throws std::invalid_argument if samples are empty or times are not
  /// strictly increasing.
  Trajectory(std::vector<TrajectorySample> samples, double energy);

  const std::vector<TrajectorySample>& samples() const noexcept { return samples_; }
  double energy() const noexcept { return energy_; }
  std::size_t size() const noexcept { return samples_.size(); }
  const TrajectorySample& front() const { return samples_.front(); }
  const TrajectorySample& back() const { return samples_.back(); }

 private:
  std::vector<TrajectorySample> samples_;
  double energy_;
};

}  // namespace hamflow
