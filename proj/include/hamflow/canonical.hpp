#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "hamflow/dynamics.hpp"
#include "hamflow/hierarchy.hpp"
#include "hamflow/potential.hpp"
#include "hamflow/state.hpp"
#include "hamflow/system.hpp"

/// λ-extended canonical transformations.
///
/// The λ-lift of a generating function F is F_λ = mλ² ln(1 + F/mλ²)
/// = Σ_j (1/j!)(−1/mλ²)^{j−1} F_j with F_j = (j−1)! F^j. Writing the
/// multiplicative Lagrangian as L_λ = p_λ ẋ − H_λ and requiring
/// L_λ = L'_λ + dF_λ/dt with L'_λ = P_λ Ẋ − H'_λ gives the four classical
/// relation sets with (p, P, H, F) replaced by (p_λ, P_λ, H_λ, F_λ):
///
///   type 1  F(x, X)   p_λ =  ∂F_λ/∂x    P_λ = −∂F_λ/∂X
///   type 2  F(x, P)   p_λ =  ∂F_λ/∂x    X   =  ∂F_λ/∂P_λ
///   type 3  F(p, X)   x   = −∂F_λ/∂p_λ  P_λ = −∂F_λ/∂X
///   type 4  F(p, P)   x   = −∂F_λ/∂p_λ  X   =  ∂F_λ/∂P_λ
///
/// and in every case H'_λ = H_λ + ∂F_λ/∂t. For λ = INFINITE these are the
/// standard canonical transformations of F.
namespace hamflow::canonical {

enum class CtType { type1 = 1, type2 = 2, type3 = 3, type4 = 4 };

/// F(q, Q, t) with analytic partials. q is the old argument (x for types
/// 1–2, p for 3–4), Q the new one (X for types 1 and 3, P for 2 and 4).
struct BaseGenerator {
  std::string name;
  std::function<double(double q, double new_arg, double t)> value;
  std::function<double(double q, double new_arg, double t)> d_old;
  std::function<double(double q, double new_arg, double t)> d_new;
  std::function<double(double q, double new_arg, double t)> d_t;
  bool time_dependent = false;
};

struct Interval {
  double lo = -1.0;
  double hi = 1.0;
};

/// Search ranges for the old argument q and the new argument Q.
struct DomainBox {
  Interval old_arg;
  Interval new_arg;
};

class GeneratingFunctionSpec {
 public:
  /// Throws std::invalid_argument for empty intervals or missing callables,
  /// DomainError when F ≤ −mλ² somewhere on the box (sampled at t = 0).
  GeneratingFunctionSpec(CtType type, BaseGenerator base, DomainBox box, SystemParams params);

  CtType type() const noexcept { return type_; }
  const BaseGenerator& base() const noexcept { return base_; }
  const DomainBox& box() const noexcept { return box_; }
  const SystemParams& params() const noexcept { return params_; }

  GeneratingFunctionSpec with_params(const SystemParams& params) const {
    return {type_, base_, box_, params};
  }

  /// F_λ and its partials; equal to F and its partials for λ = INFINITE.
  /// Throw DomainError where 1 + F/mλ² ≤ 0.
  double lifted(double q, double new_arg, double t) const;
  double lifted_d_old(double q, double new_arg, double t) const;
  double lifted_d_new(double q, double new_arg, double t) const;
  double lifted_d_t(double q, double new_arg, double t) const;

  /// True when both partials of F vanish on a sampling grid of the box.
  bool degenerate() const noexcept { return degenerate_; }

 private:
  double lift_factor(double q, double new_arg, double t) const;

  CtType type_;
  BaseGenerator base_;
  DomainBox box_;
  SystemParams params_;
  bool degenerate_ = false;
};

/// Built-in catalog:
///   exchange         type 1  F = x X
///   scaled_exchange  type 1  F = α x X
///   identity         type 2  F = x P
///   scaled_identity  type 2  F = α x P
///   identity_p       type 3  F = −p X
///   exchange_p       type 4  F = p P
/// Throws std::invalid_argument for unknown names.
GeneratingFunctionSpec catalog_spec(std::string_view name, double alpha, const DomainBox& box,
                                    const SystemParams& params);
std::vector<std::string> catalog_names();

/// F_λ = mλ² ln(1 + F/mλ²); F itself for λ = INFINITE. Throws DomainError
/// for F ≤ −mλ².
double f_lambda(double f_value, const SystemParams& params);

/// F_j = (j−1)! F^j.
double f_j(int j, double f_value);

/// Σ_{j=1}^{J} (1/j!)(−1/mλ²)^{j−1} F_j. Throws DomainError for |F| ≥ mλ²
/// (outside the convergence radius of ln(1 + u)).
double f_lambda_series(hierarchy::TruncationOrder order, double f_value, const SystemParams& params);

/// (x, p_λ) before a transformation, (X, P_λ) after.
struct CanonicalPair {
  double position = 0.0;
  double momentum = 0.0;
};

struct CTDiagnostics {
  int iterations = 0;
  double residual = 0.0;
};

struct CTResult {
  CanonicalPair new_state;
  /// H'_λ = H_λ + ∂F_λ/∂t at the old state (H_N + ∂F/∂t for λ = INFINITE).
  double new_hamiltonian = 0.0;
  CTDiagnostics diagnostics;
};

/// A solved coordinate map in either direction.
struct CTSolution {
  CanonicalPair state;
  CTDiagnostics diagnostics;
};

/// Old and new pairs determined by generator arguments (q, n): the argument
/// itself plus the conjugate variable from the type's defining relation.
CanonicalPair old_pair(const GeneratingFunctionSpec& spec, double q, double n, double t = 0.0);
CanonicalPair new_pair(const GeneratingFunctionSpec& spec, double q, double n, double t = 0.0);

/// Solves the implicit relation of spec's type for the unknown new variable
/// by bracketed root finding over the box, then evaluates the explicit one.
///
/// Throws DegenerateSpecError when F has vanishing partials on the box,
/// NoRootError / AmbiguousRootError from the root search, DomainError when
/// the state lies outside the λ-momentum map or the λ-lift domain.
CTResult ct_apply(const GeneratingFunctionSpec& spec, const CanonicalPair& old_state, double t,
                  const Potential& potential);

/// ct_apply without the Hamiltonian: only the coordinate map.
CTSolution ct_forward(const GeneratingFunctionSpec& spec, const CanonicalPair& old_state, double t);

/// The same relations solved in the other direction: (X, P_λ) → (x, p_λ).
CTSolution ct_invert(const GeneratingFunctionSpec& spec, const CanonicalPair& new_state, double t);

/// {x, p_λ} in the standard (x, p) bracket. Analytically e^{−H_N/mλ²}, so
/// (x, p_λ) is not a unit-bracket pair w.r.t. (x, p).
double lambda_momentum_bracket(const PhaseState& state, const Potential& potential,
                               const SystemParams& params);

/// Integrates the multiplicative flow (standard flow for λ = INFINITE) from
/// `start`, maps every sample to (X, P_λ), and integrates the flow of
/// K(X, P_λ) = H_λ(ct_invert(X, P_λ)) in the new chart from the mapped start.
/// The new-chart field is ρ·(∂K/∂P_λ, −∂K/∂X) with ρ = −K/mλ² = e^{−H_N/mλ²}
/// (1 for λ = INFINITE), the factor by which the (x, p) bracket differs from
/// the (x, p_λ) one. Returns the max phase-plane distance between the two
/// runs sample by sample. Only time-independent generators are supported
/// (std::invalid_argument otherwise); rk4 only.
double ct_dynamics_check(const GeneratingFunctionSpec& spec, const Potential& potential,
                         const PhaseState& start, const dynamics::IntegratorConfig& cfg);

/// Order-by-order check of the λ-relations: for j = 1..J the coefficient of
/// (1/j!)(−1/mλ²)^{j−1} in ∂F_λ/∂q and ∂F_λ/∂Q, extracted by a polynomial fit
/// in 1/mλ², against ∂F_j/∂q = j! F^{j−1} ∂F/∂q (and likewise for Q). Returns
/// one relative residual per j (max over a 3×3 interior grid of the box and
/// both partials). Fits are reliable for low orders (j ≲ 8).
std::vector<double> ct_hierarchy_expand(const GeneratingFunctionSpec& spec,
                                        hierarchy::TruncationOrder order);

/// Richardson extrapolation to λ = ∞ of ct_apply outputs computed at the
/// given finite λ values (extrapolated in 1/λ²).
/// The old state is held fixed across λ.
CanonicalPair richardson_limit(const GeneratingFunctionSpec& spec, const CanonicalPair& old_state,
                               const std::vector<double>& lambdas);

}  // namespace hamflow::canonical
