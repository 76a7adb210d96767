#include <algorithm>
#include <cmath>
#include <future>
#include <span>
#include <stdexcept>

#include "hamflow/canonical.hpp"
#include "hamflow/errors.hpp"
#include "hamflow/hierarchy.hpp"
#include "hamflow/mechanics.hpp"
#include "hamflow/numeric/finite_difference.hpp"
#include "hamflow/numeric/series_fit.hpp"

namespace hamflow::canonical {

double ct_dynamics_check(const GeneratingFunctionSpec& spec, const Potential& potential,
                         const PhaseState& start, const dynamics::IntegratorConfig& cfg) {
  if (spec.base().time_dependent)
    throw std::invalid_argument("ct_dynamics_check supports time-independent generators only");
  if (cfg.method != dynamics::Method::rk4)
    throw std::invalid_argument("ct_dynamics_check integrates with rk4");
  const SystemParams& params = spec.params();
  const bool additive = params.lambda().is_infinite();
  const double m = params.mass();
  const double energy = additive_hamiltonian(start, potential, params);

  const auto to_new = [&](const PhaseState& s) {
    const double pl = hierarchy::lambda_momentum(to_kinetic(s, m), potential, params);
    return ct_forward(spec, {s.x, pl}, 0.0).state;
  };

  auto original = std::async(std::launch::async, [&] {
    const auto kind = additive ? dynamics::FlowSpec::standard() : dynamics::FlowSpec::multiplicative();
    return dynamics::integrate(dynamics::flow_field(kind, potential, params), start, cfg);
  });

  // H_N as a function of the new chart, through the inverse map.
  const auto energy_at = [&](double X, double P) {
    const auto old = ct_invert(spec, {X, P}, 0.0).state;
    const double p = hierarchy::standard_momentum(old.position, old.momentum, potential, params);
    return additive_hamiltonian({old.position, p}, potential, params);
  };
  // K + mλ², shifted so the finite differences see O(H_N) magnitudes.
  const auto shifted_k = [&](double X, double P) {
    const double hn = energy_at(X, P);
    return additive ? hn : -params.energy_scale() * std::expm1(-hn / params.energy_scale());
  };
  const dynamics::VectorField new_field = [&](const PhaseState& s) {
    const double h = numeric::fd_step({s.x, s.p});
    const double dk_dx =
        numeric::central_difference([&](double X) { return shifted_k(X, s.p); }, s.x, h);
    const double dk_dp =
        numeric::central_difference([&](double P) { return shifted_k(s.x, P); }, s.p, h);
    const double rho = additive ? 1.0 : std::exp(-energy_at(s.x, s.p) / params.energy_scale());
    return dynamics::PhaseVelocity{rho * dk_dp, -rho * dk_dx};
  };

  const auto mapped_start = to_new(start);
  const auto transformed = dynamics::integrate_field(
      new_field, {mapped_start.position, mapped_start.momentum}, cfg, energy, "transformed");
  const auto orig = original.get();

  double worst = 0.0;
  const auto& a = orig.samples();
  const auto& b = transformed.samples();
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto mapped = to_new(a[k].state);
    worst = std::max(worst, std::hypot(mapped.position - b[k].state.x,
                                       mapped.momentum - b[k].state.p));
  }
  return worst;
}

std::vector<double> ct_hierarchy_expand(const GeneratingFunctionSpec& spec,
                                        hierarchy::TruncationOrder order) {
  const auto& base = spec.base();
  const auto& box = spec.box();
  const double m = spec.params().mass();

  constexpr int kGrid = 16;
  double f_max = 0.0;
  for (int i = 0; i <= kGrid; ++i) {
    for (int k = 0; k <= kGrid; ++k) {
      const double q = box.old_arg.lo + (box.old_arg.hi - box.old_arg.lo) * i / kGrid;
      const double n = box.new_arg.lo + (box.new_arg.hi - box.new_arg.lo) * k / kGrid;
      f_max = std::max(f_max, std::abs(base.value(q, n, 0.0)));
    }
  }
  if (!spec.params().lambda().is_infinite() && !(f_max < spec.params().energy_scale()))
    throw DomainError("|F| >= m*lambda^2 on the domain box; the F_j series does not converge");

  // At each point sweep a = 1/mλ² over (0, r/|F|]. The relation has a pole at
  // a = −1/F, so the radius depends on the side it falls on; with F < 0 the
  // pole sits past the sweep and three fits are combined by median. The sweep
  // runs on a small box around the point so the λ-lift domain check stays
  // local.
  struct FitPlan {
    double radius;
    int degree;
  };
  constexpr FitPlan kPositive[] = {{0.6, 18}};
  constexpr FitPlan kNegative[] = {{0.3, 14}, {0.3, 16}, {0.4, 18}};
  const int n_coeffs = order.value();

  std::vector<double> residuals(static_cast<std::size_t>(n_coeffs), 0.0);
  const double fractions[] = {0.25, 0.5, 0.75};
  for (double fq : fractions) {
    for (double fn : fractions) {
      const double q = box.old_arg.lo + (box.old_arg.hi - box.old_arg.lo) * fq;
      const double n = box.new_arg.lo + (box.new_arg.hi - box.new_arg.lo) * fn;
      const double f = base.value(q, n, 0.0);
      const double f_scale = std::max({std::abs(f), 1e-3 * f_max, 1e-12});
      const double dq = 1e-3 * (box.old_arg.hi - box.old_arg.lo);
      const double dn = 1e-3 * (box.new_arg.hi - box.new_arg.lo);
      const DomainBox local{{q - dq, q + dq}, {n - dn, n + dn}};
      const std::span<const FitPlan> plans =
          f < 0.0 ? std::span<const FitPlan>(kNegative) : std::span<const FitPlan>(kPositive);

      for (int which = 0; which < 2; ++which) {
        const auto relation = [&](double a) {
          const GeneratingFunctionSpec at(spec.type(), base, local,
                                          SystemParams(m, Lambda(1.0 / std::sqrt(m * a))));
          return which == 0 ? at.lifted_d_old(q, n, 0.0) : at.lifted_d_new(q, n, 0.0);
        };
        const double partial = which == 0 ? base.d_old(q, n, 0.0) : base.d_new(q, n, 0.0);
        std::vector<std::vector<double>> fits;
        for (const FitPlan& plan : plans) {
          const int degree = std::max(plan.degree, n_coeffs + 2);
          fits.push_back(numeric::fit_power_series(relation, plan.radius / f_scale,
                                                   static_cast<std::size_t>(n_coeffs), degree,
                                                   3 * degree + 4));
        }
        std::vector<double> coeffs(static_cast<std::size_t>(n_coeffs));
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
          std::vector<double> column;
          for (const auto& fit : fits) column.push_back(fit[k]);
          std::nth_element(column.begin(), column.begin() + column.size() / 2, column.end());
          coeffs[k] = column[column.size() / 2];
        }
        double j_factorial = 1.0;
        double f_pow = 1.0;  // F^{j−1}
        for (int j = 1; j <= n_coeffs; ++j) {
          j_factorial *= j;
          const double sign = (j - 1) % 2 == 0 ? 1.0 : -1.0;
          const double extracted = coeffs[j - 1] * j_factorial * sign;
          const double direct = j_factorial * f_pow * partial;  // ∂F_j = j! F^{j−1} ∂F
          const double r = std::abs(extracted - direct) / std::max(1.0, std::abs(direct));
          residuals[j - 1] = std::max(residuals[j - 1], r);
          f_pow *= f;
        }
      }
    }
  }
  return residuals;
}

CanonicalPair richardson_limit(const GeneratingFunctionSpec& spec, const CanonicalPair& old_state,
                               const std::vector<double>& lambdas) {
  if (lambdas.empty()) throw std::invalid_argument("richardson_limit needs at least one lambda");
  std::vector<double> h, xs, ps;
  for (double l : lambdas) {
    const auto at = spec.with_params(SystemParams(spec.params().mass(), Lambda(l)));
    const auto sol = ct_forward(at, old_state, 0.0).state;
    h.push_back(1.0 / (l * l));
    xs.push_back(sol.position);
    ps.push_back(sol.momentum);
  }
  return {numeric::extrapolate_to_zero(h, xs), numeric::extrapolate_to_zero(h, ps)};
}

}  // namespace hamflow::canonical
