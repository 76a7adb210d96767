#include <cmath>
#include <stdexcept>
#include <vector>

#include "hamflow/errors.hpp"
#include "hamflow/hierarchy.hpp"
#include "hamflow/mechanics.hpp"

namespace hamflow::hierarchy {

namespace {

void require_index(int j) {
  if (j < 1) throw std::invalid_argument("hierarchy index j must be >= 1");
}

// base^0 .. base^n by repeated multiplication.
std::vector<double> powers(double base, int n) {
  std::vector<double> out(static_cast<std::size_t>(n) + 1);
  out[0] = 1.0;
  for (int i = 1; i <= n; ++i) out[i] = out[i - 1] * base;
  return out;
}

}  // namespace

TruncationOrder::TruncationOrder(int order) : order_(order) {
  if (order < 1 || order > max_order)
    throw std::invalid_argument("truncation order J must lie in [1, 64]");
}

double lagrangian_j(int j, double kinetic, double potential_energy) {
  require_index(j);
  const auto tp = powers(kinetic, j);
  const auto vp = powers(potential_energy, j);
  double sum = 0.0;
  double binom = 1.0;  // C(j, k)
  for (int k = 0; k <= j; ++k) {
    sum += binom * tp[j - k] * vp[k] / static_cast<double>(2 * (j - k) - 1);
    binom = binom * (j - k) / (k + 1);
  }
  return sum;
}

double hamiltonian_j(int j, const PhaseState& state, const Potential& potential,
                     const SystemParams& params) {
  require_index(j);
  const double hn = additive_hamiltonian(state, potential, params);
  double out = hn;
  for (int i = 2; i <= j; ++i) out *= hn;
  return out;
}

// p_j = j Σ_{k=0}^{j−1} C(j−1,k) V^k τ^n p/(2n+1),  n = j−1−k,  τ = p²/2m.
double momentum_j(int j, const PhaseState& state, const Potential& potential,
                  const SystemParams& params) {
  require_index(j);
  const int n_max = j - 1;
  const auto tp = powers(kinetic_energy(state, params), n_max);
  const auto vp = powers(potential.eval(state.x), n_max);
  double sum = 0.0;
  double binom = 1.0;  // C(j−1, k)
  for (int k = 0; k <= n_max; ++k) {
    const int n = n_max - k;
    sum += binom * vp[k] * tp[n] * state.p / static_cast<double>(2 * n + 1);
    binom = binom * (n_max - k) / (k + 1);
  }
  return j * sum;
}

double momentum_j_dp(int j, const PhaseState& state, const Potential& potential,
                     const SystemParams& params) {
  require_index(j);
  const int n_max = j - 1;
  const auto tp = powers(kinetic_energy(state, params), n_max);
  const auto vp = powers(potential.eval(state.x), n_max);
  double sum = 0.0;
  double binom = 1.0;
  for (int k = 0; k <= n_max; ++k) {
    // d/dp [τ^n p / (2n+1)] = τ^n
    sum += binom * vp[k] * tp[n_max - k];
    binom = binom * (n_max - k) / (k + 1);
  }
  return j * sum;
}

double momentum_j_printed(int j, const PhaseState& state, const Potential& potential,
                          const SystemParams& params) {
  require_index(j);
  const double v = potential.eval(state.x);
  const double p = state.p;
  const double m = params.mass();
  double prev = 0.0;       // p_0
  double factorial = 1.0;  // i!
  double p_pow = p;        // p^{2i−1}
  double scale = 1.0;      // 2^{i−1} m^{i−1}
  for (int i = 1; i <= j; ++i) {
    factorial *= i;
    // i!/(i−1)! = i
    prev = factorial * prev * v + i * p_pow / (scale * (2 * i - 1));
    p_pow *= p * p;
    scale *= 2.0 * m;
  }
  return prev;
}

double truncated_series(TruncationOrder order, SeriesKind kind, const PhaseState& state,
                        const Potential& potential, const SystemParams& params) {
  if (params.lambda().is_infinite())
    throw DomainError("truncated_series needs a finite lambda");
  const double scale = params.energy_scale();
  const double t = kinetic_energy(state, params);
  const double v = potential.eval(state.x);

  double sum = 0.0;
  double coef = 1.0;  // (1/j!)(−1/mλ²)^{j−1}
  for (int j = 1; j <= order.value(); ++j) {
    double term = 0.0;
    switch (kind) {
      case SeriesKind::lagrangian:
        term = lagrangian_j(j, t, v);
        break;
      case SeriesKind::hamiltonian:
        term = hamiltonian_j(j, state, potential, params);
        break;
      case SeriesKind::momentum:
        term = momentum_j(j, state, potential, params);
        break;
    }
    sum += coef * term;
    coef *= -1.0 / (scale * (j + 1));
  }
  switch (kind) {
    case SeriesKind::lagrangian:
      return sum + scale;
    case SeriesKind::hamiltonian:
      return sum - scale;
    case SeriesKind::momentum:
      return sum;
  }
  return sum;
}

double reduction_residual(SeriesKind kind, const PhaseState& state, const Potential& potential,
                          const SystemParams& params) {
  if (params.lambda().is_infinite()) return 0.0;
  const KineticState ks = to_kinetic(state, params.mass());
  switch (kind) {
    case SeriesKind::lagrangian:
      return std::abs(shifted_lagrangian(ks, potential, params) -
                      (kinetic_energy(state, params) - potential.eval(state.x)));
    case SeriesKind::hamiltonian:
      return std::abs(shifted_hamiltonian(state, potential, params) -
                      additive_hamiltonian(state, potential, params));
    case SeriesKind::momentum:
      return std::abs(lambda_momentum(ks, potential, params) - state.p);
  }
  return 0.0;
}

bool series_ill_conditioned(const PhaseState& state, const Potential& potential,
                            const SystemParams& params) {
  if (params.lambda().is_infinite()) return false;
  return std::abs(additive_hamiltonian(state, potential, params)) / params.energy_scale() > 2.0;
}

}  // namespace hamflow::hierarchy
