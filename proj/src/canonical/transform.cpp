#include <cmath>

#include "hamflow/canonical.hpp"
#include "hamflow/dynamics.hpp"
#include "hamflow/errors.hpp"
#include "hamflow/hierarchy.hpp"
#include "hamflow/mechanics.hpp"
#include "hamflow/numeric/root_finding.hpp"

namespace hamflow::canonical {

namespace {

// Types 1–2 take x as the old argument, types 3–4 take p_λ.
bool old_arg_is_position(CtType t) { return t == CtType::type1 || t == CtType::type2; }
// Types 1 and 3 take X as the new argument, types 2 and 4 take P_λ.
bool new_arg_is_position(CtType t) { return t == CtType::type1 || t == CtType::type3; }

// The old non-argument variable equals old_sign·∂F_λ/∂q:
//   p_λ = ∂F_λ/∂x  (types 1, 2),   x = −∂F_λ/∂p_λ  (types 3, 4).
double old_sign(CtType t) { return old_arg_is_position(t) ? 1.0 : -1.0; }
// The new non-argument variable equals new_sign·∂F_λ/∂Q:
//   P_λ = −∂F_λ/∂X  (types 1, 3),  X = ∂F_λ/∂P_λ  (types 2, 4).
double new_sign(CtType t) { return new_arg_is_position(t) ? -1.0 : 1.0; }

numeric::RootOptions root_options(double target) {
  numeric::RootOptions opts;
  opts.residual_tol = 1e-10 * std::max(1.0, std::abs(target));
  return opts;
}

void require_nondegenerate(const GeneratingFunctionSpec& spec) {
  if (spec.degenerate())
    throw DegenerateSpecError("generating function '" + spec.base().name +
                              "' has vanishing partials on its domain box; it defines no "
                              "transformation");
}

}  // namespace

CanonicalPair old_pair(const GeneratingFunctionSpec& spec, double q, double n, double t) {
  const double other = old_sign(spec.type()) * spec.lifted_d_old(q, n, t);
  return old_arg_is_position(spec.type()) ? CanonicalPair{q, other} : CanonicalPair{other, q};
}

CanonicalPair new_pair(const GeneratingFunctionSpec& spec, double q, double n, double t) {
  const double other = new_sign(spec.type()) * spec.lifted_d_new(q, n, t);
  return new_arg_is_position(spec.type()) ? CanonicalPair{n, other} : CanonicalPair{other, n};
}

CTSolution ct_forward(const GeneratingFunctionSpec& spec, const CanonicalPair& old_state,
                      double t) {
  require_nondegenerate(spec);
  const CtType type = spec.type();
  const bool q_is_x = old_arg_is_position(type);
  const double q = q_is_x ? old_state.position : old_state.momentum;
  const double target = q_is_x ? old_state.momentum : old_state.position;
  const double so = old_sign(type);

  const auto relation = [&](double n) { return so * spec.lifted_d_old(q, n, t) - target; };
  const auto& box = spec.box().new_arg;
  const auto root = numeric::find_bracketed_root(relation, box.lo, box.hi, root_options(target));

  const double n = root.root;
  const double other = new_sign(type) * spec.lifted_d_new(q, n, t);
  CanonicalPair out = new_arg_is_position(type) ? CanonicalPair{n, other} : CanonicalPair{other, n};
  return {out, {root.iterations, root.residual}};
}

CTSolution ct_invert(const GeneratingFunctionSpec& spec, const CanonicalPair& new_state,
                     double t) {
  require_nondegenerate(spec);
  const CtType type = spec.type();
  const bool n_is_x = new_arg_is_position(type);
  const double n = n_is_x ? new_state.position : new_state.momentum;
  const double target = n_is_x ? new_state.momentum : new_state.position;
  const double sn = new_sign(type);

  const auto relation = [&](double q) { return sn * spec.lifted_d_new(q, n, t) - target; };
  const auto& box = spec.box().old_arg;
  const auto root = numeric::find_bracketed_root(relation, box.lo, box.hi, root_options(target));

  const double q = root.root;
  const double other = old_sign(type) * spec.lifted_d_old(q, n, t);
  CanonicalPair out = old_arg_is_position(type) ? CanonicalPair{q, other} : CanonicalPair{other, q};
  return {out, {root.iterations, root.residual}};
}

CTResult ct_apply(const GeneratingFunctionSpec& spec, const CanonicalPair& old_state, double t,
                  const Potential& potential) {
  const CTSolution sol = ct_forward(spec, old_state, t);
  const SystemParams& params = spec.params();
  const CtType type = spec.type();

  const double p = hierarchy::standard_momentum(old_state.position, old_state.momentum, potential,
                                                params);
  const PhaseState phase{old_state.position, p};
  const double h_old = params.lambda().is_infinite()
                           ? additive_hamiltonian(phase, potential, params)
                           : hierarchy::multiplicative_hamiltonian(phase, potential, params);

  const double q = old_arg_is_position(type) ? old_state.position : old_state.momentum;
  const double n = new_arg_is_position(type) ? sol.state.position : sol.state.momentum;
  return {sol.state, h_old + spec.lifted_d_t(q, n, t), sol.diagnostics};
}

double lambda_momentum_bracket(const PhaseState& state, const Potential& potential,
                               const SystemParams& params) {
  const double m = params.mass();
  return dynamics::poisson_bracket(
      [](const PhaseState& s) { return s.x; },
      [&](const PhaseState& s) {
        return hierarchy::lambda_momentum(to_kinetic(s, m), potential, params);
      },
      state);
}

}  // namespace hamflow::canonical
