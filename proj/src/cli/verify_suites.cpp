#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <random>

#include "hamflow/canonical.hpp"
#include "hamflow/cli/commands.hpp"
#include "hamflow/cli/output.hpp"
#include "hamflow/dynamics.hpp"
#include "hamflow/hierarchy.hpp"
#include "hamflow/mechanics.hpp"

namespace hamflow::cli {

namespace {

using dynamics::FlowSpec;

constexpr double kLegendreTol = 1e-9;
constexpr double kHamiltonTol = 1e-7;
constexpr double kSeriesTol = 1e-10;
constexpr double kCoincidenceTol = 1e-5;
constexpr double kRescalingTol = 1e-5;
constexpr double kEnergyTol = 1e-9;
constexpr double kExpandTol = 1e-6;
constexpr double kResummationTol = 1e-9;
constexpr double kRoundTripTol = 1e-8;
constexpr double kRichardsonTol = 1e-6;
constexpr double kCtDynamicsTol = 1e-4;
constexpr double kIdentityTol = 1e-8;
constexpr double kBracketTol = 1e-6;

struct Ctx {
  const RunConfig& cfg;
  const Potential& v;
  const SystemParams& params;
  std::mt19937_64 rng;

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  PhaseState box_state() { return {uniform(-2.0, 2.0), uniform(-2.0, 2.0)}; }
};

std::mt19937_64 suite_rng(std::uint64_t seed, const std::string& suite) {
  std::seed_seq seq(suite.begin(), suite.end());
  std::vector<std::uint32_t> words(2);
  seq.generate(words.begin(), words.end());
  std::seed_seq mixed{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      words[0], words[1]};
  return std::mt19937_64(mixed);
}

std::string lambda_tag(double lambda) { return "lambda=" + format_real(lambda); }

// Halves the state until |H_N| ≤ cap; returns false if that never happens.
bool shrink_to(PhaseState& s, const Potential& v, const SystemParams& params, double cap) {
  for (int i = 0; i < 60; ++i) {
    if (std::abs(additive_hamiltonian(s, v, params)) <= cap) return true;
    s.x *= 0.5;
    s.p *= 0.5;
  }
  return false;
}

void legendre(Ctx& c, SuiteReport& r) {
  const double m = c.params.mass();
  std::vector<KineticState> states{to_kinetic(c.cfg.verify.start, m)};
  for (int i = 0; i < c.cfg.verify.samples; ++i) states.push_back({c.uniform(-2, 2), c.uniform(-2, 2)});
  for (int j = 1; j <= 8; ++j) {
    double worst = 0.0;
    for (const auto& ks : states) {
      const double hj = hierarchy::hamiltonian_j(j, to_phase(ks, m), c.v, c.params);
      worst = std::max(worst, dynamics::legendre_residual_j(j, ks, c.v, c.params) /
                                  std::max(1.0, std::abs(hj)));
    }
    r.checks.push_back(make_check("legendre.j=" + std::to_string(j), worst, kLegendreTol));
  }
}

void hamilton(Ctx& c, SuiteReport& r) {
  std::vector<PhaseState> states{c.cfg.verify.start};
  for (int i = 0; i < c.cfg.verify.samples; ++i) states.push_back(c.box_state());
  for (int j = 1; j <= 6; ++j) {
    for (auto mode : {dynamics::Partials::analytic, dynamics::Partials::finite_difference}) {
      double worst = 0.0;
      for (const auto& s : states) {
        const auto res = dynamics::hamilton_identity_residuals(j, s, c.v, c.params, mode);
        const double h = additive_hamiltonian(s, c.v, c.params);
        const double scale = std::max(1.0, std::abs(j * std::pow(h, j - 1)));
        worst = std::max(worst, std::max(std::abs(res.r_x), std::abs(res.r_p)) / scale);
      }
      const char* tag = mode == dynamics::Partials::analytic ? ".analytic" : ".finite_difference";
      r.checks.push_back(make_check("hamilton.j=" + std::to_string(j) + tag, worst, kHamiltonTol));
    }
  }
}

void series(Ctx& c, SuiteReport& r) {
  using hierarchy::SeriesKind;
  const SystemParams params = c.params.lambda().is_infinite()
                                  ? c.params.with_lambda(Lambda(10.0))
                                  : c.params;
  const double cap = std::min(1.0, 0.01 * params.energy_scale());
  const hierarchy::TruncationOrder order(12);
  std::vector<PhaseState> states;
  PhaseState start = c.cfg.verify.start;
  if (shrink_to(start, c.v, params, cap)) states.push_back(start);
  for (int i = 0; i < c.cfg.verify.samples; ++i) {
    PhaseState s = c.box_state();
    if (shrink_to(s, c.v, params, cap)) states.push_back(s);
  }
  double worst[3] = {0.0, 0.0, 0.0};
  for (const auto& s : states) {
    const KineticState ks = to_kinetic(s, params.mass());
    const double closed[3] = {hierarchy::multiplicative_lagrangian(ks, c.v, params),
                              hierarchy::multiplicative_hamiltonian(s, c.v, params),
                              hierarchy::multiplicative_momentum(ks, c.v, params)};
    const SeriesKind kinds[3] = {SeriesKind::lagrangian, SeriesKind::hamiltonian,
                                 SeriesKind::momentum};
    for (int k = 0; k < 3; ++k)
      worst[k] = std::max(worst[k],
                          std::abs(hierarchy::truncated_series(order, kinds[k], s, c.v, params) -
                                   closed[k]));
  }
  r.checks.push_back(make_check("series.L", worst[0], kSeriesTol));
  r.checks.push_back(make_check("series.H", worst[1], kSeriesTol));
  r.checks.push_back(make_check("series.p", worst[2], kSeriesTol));
}

void reduction(Ctx& c, SuiteReport& r) {
  using hierarchy::SeriesKind;
  const double grid[] = {1.0, 2.0, 4.0, 8.0, 16.0, 32.0};
  std::vector<PhaseState> states;
  auto admit = [&](PhaseState s) {
    if (!shrink_to(s, c.v, c.params, 2.0)) return;
    if (additive_hamiltonian(s, c.v, c.params) >= 0.0) states.push_back(s);
  };
  admit(c.cfg.verify.start);
  for (int i = 0; i < c.cfg.verify.samples; ++i) admit(c.box_state());

  // Residuals along the λ grid for one state; the count is of steps that fail
  // to decrease (an exactly-zero residual may stay zero).
  auto violations = [&](const PhaseState& s, SeriesKind kind) {
    int count = 0;
    double prev = std::numeric_limits<double>::infinity();
    for (double lam : grid) {
      const double res = hierarchy::reduction_residual(kind, s, c.v, c.params.with_lambda(Lambda(lam)));
      if (prev > 0.0 && res >= prev) ++count;
      prev = res;
    }
    return count;
  };

  double ratio = 0.0;
  int h_violations = 0;
  for (const auto& s : states) {
    for (double lam : grid) {
      const SystemParams p = c.params.with_lambda(Lambda(lam));
      const double h_n = additive_hamiltonian(s, c.v, p);
      const double h_res = hierarchy::reduction_residual(SeriesKind::hamiltonian, s, c.v, p);
      const double bound = h_n * h_n / (2.0 * p.energy_scale());
      if (bound > 0.0) {
        ratio = std::max(ratio, h_res / bound);
      } else if (h_res > 0.0) {
        ratio = std::numeric_limits<double>::infinity();
      }
    }
    h_violations += violations(s, SeriesKind::hamiltonian);
  }
  // The L-side residual can change sign in 1/λ² where its leading term
  // vanishes, so monotonicity is checked for the configured start state only.
  const int l_violations = violations(c.cfg.verify.start, SeriesKind::lagrangian);
  r.checks.push_back(make_check("reduction.H_bound_ratio", ratio, 1.0));
  r.checks.push_back(make_check("reduction.H_monotone_violations", h_violations, 0.0));
  r.checks.push_back(make_check("reduction.L_monotone_violations", l_violations, 0.0));
}

struct NamedFlow {
  std::string name;
  FlowSpec spec;
  SystemParams params;
};

std::vector<NamedFlow> compared_flows(const Ctx& c) {
  std::vector<NamedFlow> flows;
  for (int j : c.cfg.verify.rate_orders)
    flows.push_back({"j=" + std::to_string(j), FlowSpec::hierarchy(j), c.params});
  for (double lam : c.cfg.verify.flow_lambdas)
    flows.push_back({"multiplicative." + lambda_tag(lam), FlowSpec::multiplicative(),
                     c.params.with_lambda(Lambda(lam))});
  return flows;
}

void coincidence(Ctx& c, SuiteReport& r) {
  const auto& start = c.cfg.verify.start;
  const auto& ic = c.cfg.verify.integrator;
  const auto flows = compared_flows(c);
  auto reference = std::async(std::launch::async, [&] {
    return dynamics::integrate(dynamics::flow_field(FlowSpec::standard(), c.v, c.params), start, ic);
  });
  std::vector<std::future<Trajectory>> jobs;
  for (const auto& f : flows)
    jobs.push_back(std::async(std::launch::async, [&f, &c, &start, &ic] {
      return dynamics::integrate(dynamics::flow_field(f.spec, c.v, f.params), start, ic);
    }));
  const Trajectory standard = reference.get();
  for (std::size_t i = 0; i < flows.size(); ++i)
    r.checks.push_back(make_check("coincidence." + flows[i].name,
                                  dynamics::coincidence_metric(jobs[i].get(), standard),
                                  kCoincidenceTol));
}

void rescaling(Ctx& c, SuiteReport& r) {
  const auto& start = c.cfg.verify.start;
  dynamics::IntegratorConfig ic = c.cfg.verify.integrator;
  ic.t_end = c.cfg.verify.rescaling_t_end;
  const bool printed = c.cfg.verify.printed_rate_factor;
  const double energy = additive_hamiltonian(start, c.v, c.params);

  for (const auto& f : compared_flows(c)) {
    RateComparison row;
    row.flow = f.name;
    row.lambda = f.params.lambda().is_infinite() ? std::numeric_limits<double>::infinity()
                                                 : f.params.lambda().value();
    row.energy = energy;
    row.derived_factor = dynamics::rate_factor(f.spec, energy, f.params);
    row.derived_distance = dynamics::rescaling_check(f.spec, c.v, f.params, start, ic,
                                                     dynamics::RateConvention::derived);
    try {
      row.printed_factor = dynamics::printed_rate_factor(f.spec, energy, f.params);
      row.printed_distance = dynamics::rescaling_check(f.spec, c.v, f.params, start, ic,
                                                       dynamics::RateConvention::printed);
    } catch (const DomainError&) {
      row.printed_factor = std::nan("");
      row.printed_distance = std::nan("");
    }
    r.rates.push_back(row);
    r.checks.push_back(make_check("rescaling." + f.name + (printed ? ".printed" : ""),
                                  printed ? row.printed_distance : row.derived_distance,
                                  kRescalingTol));
  }
}

void energy(Ctx& c, SuiteReport& r) {
  const auto& start = c.cfg.verify.start;
  const auto& ic = c.cfg.verify.integrator;
  auto flows = compared_flows(c);
  flows.insert(flows.begin(), NamedFlow{"standard", FlowSpec::standard(), c.params});
  std::vector<std::future<double>> jobs;
  for (const auto& f : flows)
    jobs.push_back(std::async(std::launch::async, [&f, &c, &start, &ic] {
      const auto traj = dynamics::integrate(dynamics::flow_field(f.spec, c.v, f.params), start, ic);
      return dynamics::energy_drift(traj, c.v, f.params);
    }));
  const double scale = std::max(1.0, std::abs(additive_hamiltonian(start, c.v, c.params)));
  for (std::size_t i = 0; i < flows.size(); ++i)
    r.checks.push_back(make_check("energy." + flows[i].name, jobs[i].get(), kEnergyTol * scale));
}

canonical::GeneratingFunctionSpec canonical_spec(const Ctx& c, Lambda lambda) {
  const auto& cc = c.cfg.verify.canonical;
  return canonical::catalog_spec(cc.generator, cc.alpha, cc.box, c.params.with_lambda(lambda));
}

void expand(Ctx& c, SuiteReport& r) {
  const auto spec = canonical_spec(c, Lambda(c.cfg.verify.canonical.lambda));
  const auto residuals = canonical::ct_hierarchy_expand(spec, hierarchy::TruncationOrder(5));
  for (std::size_t j = 0; j < residuals.size(); ++j)
    r.checks.push_back(make_check("expand.j=" + std::to_string(j + 1), residuals[j], kExpandTol));
}

void resummation(Ctx& c, SuiteReport& r) {
  const double m = c.params.mass();
  constexpr int kOrder = 20;
  const hierarchy::TruncationOrder order(kOrder);

  // Alternating/geometric tail of the log series past J terms, plus a
  // rounding allowance for the partial sum itself.
  double ratio = 0.0;
  for (int i = 0; i < c.cfg.verify.samples; ++i) {
    const double lam = std::exp(c.uniform(std::log(0.5), std::log(20.0)));
    const SystemParams p(m, Lambda(lam));
    const double e = p.energy_scale();
    const double u = c.uniform(-0.5, 0.5);
    const double f = u * e;
    const double err = std::abs(canonical::f_lambda_series(order, f, p) - canonical::f_lambda(f, p));
    const double tail = e * std::pow(std::abs(u), kOrder + 1) / ((kOrder + 1) * (1.0 - std::abs(u)));
    ratio = std::max(ratio, err / (tail + 1e-14 * e));
  }
  r.checks.push_back(make_check("resummation.remainder_bound_ratio", ratio, 1.0));

  const SystemParams example(1.0, Lambda(2.0));
  r.checks.push_back(make_check(
      "resummation.example",
      std::abs(canonical::f_lambda_series(order, 1.0, example) - 4.0 * std::log(1.25)),
      kResummationTol));

  int missed = 0;
  const SystemParams p(m, Lambda(1.5));
  for (double u : {1.0, -1.0, 1.25, -1.25}) {
    try {
      canonical::f_lambda_series(order, u * p.energy_scale(), p);
      ++missed;
    } catch (const DomainError&) {
    }
  }
  r.checks.push_back(make_check("resummation.domain_errors_missed", missed, 0.0));
}

void canonical_suite(Ctx& c, SuiteReport& r) {
  const auto& cc = c.cfg.verify.canonical;
  const auto spec = canonical_spec(c, Lambda(cc.lambda));
  const auto limit = canonical_spec(c, Lambda::infinite());
  const auto& box = cc.box;
  auto inner = [&](const canonical::Interval& iv, double lo, double hi) {
    return iv.lo + (iv.hi - iv.lo) * c.uniform(lo, hi);
  };

  // The two trajectory comparisons dominate the cost; run them alongside the
  // pointwise checks.
  auto dyn = std::async(std::launch::async, [&] {
    return canonical::ct_dynamics_check(spec, c.v, c.cfg.verify.start, c.cfg.verify.integrator);
  });
  auto ident = std::async(std::launch::async, [&] {
    const auto id = canonical::catalog_spec("identity", 1.0, box, c.params.with_lambda(Lambda::infinite()));
    return canonical::ct_dynamics_check(id, c.v, c.cfg.verify.start, c.cfg.verify.integrator);
  });

  const int points = std::min(c.cfg.verify.samples, 100);
  double round_trip = 0.0;
  double consistency = 0.0;
  for (int i = 0; i < points; ++i) {
    const double q = inner(box.old_arg, 0.1, 0.9);
    const double n = inner(box.new_arg, 0.1, 0.9);
    const auto old_state = canonical::old_pair(spec, q, n);
    const auto expected = canonical::new_pair(spec, q, n);
    const auto fwd = canonical::ct_forward(spec, old_state, 0.0).state;
    const auto back = canonical::ct_invert(spec, fwd, 0.0).state;
    round_trip = std::max(round_trip, std::hypot(back.position - old_state.position,
                                                 back.momentum - old_state.momentum));
    consistency = std::max(consistency, std::hypot(fwd.position - expected.position,
                                                   fwd.momentum - expected.momentum));
  }
  r.checks.push_back(make_check("canonical.round_trip", round_trip, kRoundTripTol));
  r.checks.push_back(make_check("canonical.forward_consistency", consistency, kRoundTripTol));

  double richardson = 0.0;
  for (int i = 0; i < std::min(points, 10); ++i) {
    const double q = inner(box.old_arg, 0.25, 0.75);
    const double n = inner(box.new_arg, 0.25, 0.75);
    const auto old_state = canonical::old_pair(limit, q, n);
    const auto exact = canonical::ct_forward(limit, old_state, 0.0).state;
    const auto extrapolated =
        canonical::richardson_limit(
            spec, old_state, {cc.lambda, 2.0 * cc.lambda, 4.0 * cc.lambda, 8.0 * cc.lambda});
    richardson = std::max(richardson, std::hypot(extrapolated.position - exact.position,
                                                 extrapolated.momentum - exact.momentum));
  }
  r.checks.push_back(make_check("canonical.richardson_limit", richardson, kRichardsonTol));

  double bracket = 0.0;
  const SystemParams p = c.params.with_lambda(Lambda(cc.lambda));
  std::vector<PhaseState> states{c.cfg.verify.start};
  for (int i = 0; i < std::min(points, 20); ++i) states.push_back(c.box_state());
  for (const auto& s : states) {
    const double expected = std::exp(-additive_hamiltonian(s, c.v, p) / p.energy_scale());
    bracket = std::max(bracket, std::abs(canonical::lambda_momentum_bracket(s, c.v, p) - expected) /
                                    std::max(1.0, expected));
  }
  r.checks.push_back(make_check("canonical.lambda_bracket", bracket, kBracketTol));

  r.checks.push_back(make_check("canonical.dynamics", dyn.get(), kCtDynamicsTol));
  r.checks.push_back(make_check("canonical.identity_limit", ident.get(), kIdentityTol));
}

}  // namespace

SuiteReport run_suite(const std::string& suite, const RunConfig& cfg) {
  Ctx c{cfg, cfg.system.potential, cfg.system.params, suite_rng(cfg.verify.seed, suite)};
  SuiteReport report;
  try {
    if (suite == "legendre") {
      legendre(c, report);
    } else if (suite == "hamilton") {
      hamilton(c, report);
    } else if (suite == "series") {
      series(c, report);
    } else if (suite == "reduction") {
      reduction(c, report);
    } else if (suite == "coincidence") {
      coincidence(c, report);
    } else if (suite == "rescaling") {
      rescaling(c, report);
    } else if (suite == "energy") {
      energy(c, report);
    } else if (suite == "expand") {
      expand(c, report);
    } else if (suite == "resummation") {
      resummation(c, report);
    } else if (suite == "canonical") {
      canonical_suite(c, report);
    } else {
      throw ConfigError("verify.suites", "unknown suite '" + suite + "'");
    }
  } catch (const NumericalBlowUp&) {
    throw;
  } catch (const ConfigError&) {
    throw;
  } catch (const Error&) {
    // A check that cannot be evaluated counts as failed; the rest of the
    // report is still produced.
    report.checks.push_back(make_check(suite + ".error", std::nan(""), 0.0));
  }
  return report;
}

}  // namespace hamflow::cli
