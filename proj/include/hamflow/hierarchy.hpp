#pragma once

#include "hamflow/potential.hpp"
#include "hamflow/state.hpp"
#include "hamflow/system.hpp"

/// Multiplicative Lagrangian / Hamiltonian / momentum, their additive
/// hierarchies L_j, H_j, p_j, and truncated resummations
///
///   L_λ = Σ_j (1/j!)(−1/mλ²)^{j−1} L_j + mλ²
///   H_λ = Σ_j (1/j!)(−1/mλ²)^{j−1} H_j − mλ²
///   p_λ = Σ_j (1/j!)(−1/mλ²)^{j−1} p_j
namespace hamflow::hierarchy {

/// Number J of retained hierarchy terms, 1 ≤ J ≤ 64.
class TruncationOrder {
 public:
  static constexpr int max_order = 64;

  /// Throws std::invalid_argument outside [1, 64].
  explicit TruncationOrder(int order);

  int value() const noexcept { return order_; }

 private:
  int order_;
};

enum class SeriesKind { lagrangian, hamiltonian, momentum };

/// ∫₀ᵘ exp(−v²/2λ²) dv by adaptive Simpson quadrature (absolute error
/// ≤ 1e-12). Throws DomainError for λ = INFINITE, where the integral is u.
double gaussian_velocity_integral(double u, Lambda lambda);

/// L_λ = mλ²(e^{−ẋ²/2λ²} + (ẋ/λ²)∫₀^ẋ e^{−v²/2λ²}dv)·e^{−V/mλ²}.
/// Throws DomainError for λ = INFINITE (the additive form is T − V).
double multiplicative_lagrangian(const KineticState& state, const Potential& potential,
                                 const SystemParams& params);

/// H_λ = −mλ² e^{−H_N/mλ²}. Throws DomainError for λ = INFINITE.
double multiplicative_hamiltonian(const PhaseState& state, const Potential& potential,
                                  const SystemParams& params);

/// p_λ = ∂L_λ/∂ẋ = m (∫₀^ẋ e^{−v²/2λ²}dv) e^{−V/mλ²}. Throws DomainError for
/// λ = INFINITE (the limit is mẋ).
double multiplicative_momentum(const KineticState& state, const Potential& potential,
                               const SystemParams& params);

// Shifted closed forms, evaluated without cancellation. For λ = INFINITE
// they return the additive limits exactly.

/// L_λ − mλ²  (→ T − V).
double shifted_lagrangian(const KineticState& state, const Potential& potential,
                          const SystemParams& params);
/// H_λ + mλ²  (→ H_N).
double shifted_hamiltonian(const PhaseState& state, const Potential& potential,
                           const SystemParams& params);
/// p_λ  (→ mẋ).
double lambda_momentum(const KineticState& state, const Potential& potential,
                       const SystemParams& params);

/// Standard momentum p recovered from (x, p_λ) by inverting the monotone map
/// p ↦ p_λ. Throws DomainError when |p_λ| is beyond the map's bound
/// mλ√(π/2)e^{−V/mλ²}.
double standard_momentum(double x, double p_lambda, const Potential& potential,
                         const SystemParams& params);

/// L_j = Σ_{k=0}^{j} j! T^{j−k} V^k / ((j−k)! k! (2j−2k−1)). Requires j ≥ 1.
double lagrangian_j(int j, double kinetic, double potential_energy);

/// H_j = H_N^j.
double hamiltonian_j(int j, const PhaseState& state, const Potential& potential,
                     const SystemParams& params);

/// p_j: coefficient of (1/j!)(−1/mλ²)^{j−1} in p_λ, equal to
/// ∫₀^p j H_N(x, p')^{j−1} dp'. p_1 = p.
double momentum_j(int j, const PhaseState& state, const Potential& potential,
                  const SystemParams& params);

/// ∂p_j/∂p, differentiated term by term from the same expansion as momentum_j.
double momentum_j_dp(int j, const PhaseState& state, const Potential& potential,
                     const SystemParams& params);

/// The recursion p_j = j![p_{j−1}V + p^{2j−1}/((j−1)! 2^{j−1} (2j−1) m^{j−1})]
/// seeded with p_0 = 0, evaluated literally. It agrees with momentum_j for
/// j ≤ 2 (or V = 0) only; kept for comparison reports.
double momentum_j_printed(int j, const PhaseState& state, const Potential& potential,
                          const SystemParams& params);

/// Σ_{j=1}^{J} (1/j!)(−1/mλ²)^{j−1} term_j plus the constant offset (+mλ² for
/// L, −mλ² for H, none for p). Throws DomainError for λ = INFINITE.
double truncated_series(TruncationOrder order, SeriesKind kind, const PhaseState& state,
                        const Potential& potential, const SystemParams& params);

/// |L_λ − mλ² − (T − V)| or |H_λ + mλ² − H_N|. Zero for λ = INFINITE.
double reduction_residual(SeriesKind kind, const PhaseState& state, const Potential& potential,
                          const SystemParams& params);

/// True when H_N/mλ² > 2: alternating series terms cancel heavily there and
/// truncated sums lose significance.
bool series_ill_conditioned(const PhaseState& state, const Potential& potential,
                            const SystemParams& params);

}  // namespace hamflow::hierarchy
