#pragma once

#include "hamflow/potential.hpp"
#include "hamflow/state.hpp"
#include "hamflow/system.hpp"

namespace hamflow {

/// T = p²/2m.
double kinetic_energy(const PhaseState& state, const SystemParams& params);

/// H_N = T + V.
double additive_hamiltonian(const PhaseState& state, const Potential& potential,
                            const SystemParams& params);

}  // namespace hamflow
