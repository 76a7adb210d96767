#include "hamflow/mechanics.hpp"

namespace hamflow {

double kinetic_energy(const PhaseState& state, const SystemParams& params) {
  return state.p * state.p / (2.0 * params.mass());
}

double additive_hamiltonian(const PhaseState& state, const Potential& potential,
                            const SystemParams& params) {
  return kinetic_energy(state, params) + potential.eval(state.x);
}

}  // namespace hamflow
