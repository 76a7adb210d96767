#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "hamflow/dynamics.hpp"
#include "hamflow/errors.hpp"
#include "hamflow/hierarchy.hpp"
#include "hamflow/mechanics.hpp"

namespace hamflow::dynamics {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const SystemParams kUnitInf(1.0, Lambda::infinite());

TEST(Bracket, CanonicalExamples) {
  const auto x = [](const PhaseState& s) { return s.x; };
  const auto p = [](const PhaseState& s) { return s.p; };
  const auto v = Potential::harmonic();
  const auto h = [&](const PhaseState& s) { return additive_hamiltonian(s, v, SystemParams(2.0, Lambda::infinite())); };
  const PhaseState s{0.4, -1.2};
  EXPECT_NEAR(poisson_bracket(x, p, s), 1.0, 1e-9);
  EXPECT_NEAR(poisson_bracket(p, x, s), -1.0, 1e-9);
  EXPECT_NEAR(poisson_bracket(h, h, s), 0.0, 1e-9);
  EXPECT_NEAR(poisson_bracket(x, h, s), -1.2 / 2.0, 1e-8);
  EXPECT_NEAR(poisson_bracket(p, h, s), -0.4, 1e-8);
}

TEST(Identities, LegendreHoldsOnRandomStates) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  const auto v = Potential::quartic(1.0, 0.3);
  const SystemParams params(1.4, Lambda::infinite());
  for (int i = 0; i < 100; ++i) {
    const KineticState s{d(rng), d(rng)};
    const PhaseState ps = to_phase(s, params.mass());
    for (int j = 1; j <= 8; ++j) {
      const double scale = std::max(1.0, std::abs(hierarchy::hamiltonian_j(j, ps, v, params)));
      EXPECT_LE(legendre_residual_j(j, s, v, params), 1e-9 * scale) << "j=" << j;
    }
  }
}

TEST(Identities, HamiltonRelationsHold) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> d(-1.5, 1.5);
  const auto v = Potential::harmonic(1.3);
  const SystemParams params(0.9, Lambda(2.0));
  for (int i = 0; i < 100; ++i) {
    const PhaseState s{d(rng), d(rng)};
    const double h = additive_hamiltonian(s, v, params);
    for (int j = 1; j <= 6; ++j) {
      const double scale = std::max(1.0, j * std::pow(std::abs(h), j - 1));
      const auto a = hamilton_identity_residuals(j, s, v, params, Partials::analytic);
      EXPECT_LE(std::max(std::abs(a.r_x), std::abs(a.r_p)), 1e-12 * scale) << j;
      const auto f = hamilton_identity_residuals(j, s, v, params, Partials::finite_difference);
      EXPECT_LE(std::max(std::abs(f.r_x), std::abs(f.r_p)), 1e-7 * scale) << j;
    }
  }
}

TEST(Flow, LabelsRoundTrip) {
  for (const auto& spec : {FlowSpec::standard(), FlowSpec::hierarchy(3), FlowSpec::multiplicative()})
    EXPECT_EQ(parse_flow_spec(spec.label()), spec);
  EXPECT_EQ(FlowSpec::hierarchy(2).label(), "j=2");
  EXPECT_THROW(parse_flow_spec("j=0"), std::invalid_argument);
  EXPECT_THROW(parse_flow_spec("sideways"), std::invalid_argument);
}

TEST(Flow, FieldsAreScaledStandardField) {
  const auto v = Potential::harmonic();
  const SystemParams params(1.0, Lambda(2.0));
  const PhaseState s{1.0, 0.0};
  const auto std_field = flow_field(FlowSpec::standard(), v, params)(s);
  EXPECT_EQ(std_field.dx, 0.0);
  EXPECT_EQ(std_field.dp, -1.0);
  const auto j2 = flow_field(FlowSpec::hierarchy(2), v, params)(s);
  EXPECT_DOUBLE_EQ(j2.dp, -2.0 * 0.5);
  const auto mult = flow_field(FlowSpec::multiplicative(), v, params)(s);
  EXPECT_DOUBLE_EQ(mult.dp, -std::exp(-0.5 / 4.0));
  EXPECT_THROW(flow_field(FlowSpec::multiplicative(), v, kUnitInf), DomainError);
  EXPECT_THROW(flow_field(FlowSpec::hierarchy(0), v, params), std::invalid_argument);
}

TEST(Flow, FieldMatchesBracketOfGenerator) {
  const auto v = Potential::quartic(1.0, 0.2);
  const SystemParams params(1.2, Lambda(1.5));
  const auto h = [&](const PhaseState& s) { return hierarchy::multiplicative_hamiltonian(s, v, params); };
  const auto x = [](const PhaseState& s) { return s.x; };
  const auto p = [](const PhaseState& s) { return s.p; };
  const FlowField field(FlowSpec::multiplicative(), v, params);
  for (const PhaseState s : {PhaseState{0.3, 0.8}, PhaseState{-1.1, 0.2}}) {
    const auto f = field(s);
    EXPECT_NEAR(f.dx, poisson_bracket(x, h, s), 1e-7);
    EXPECT_NEAR(f.dp, poisson_bracket(p, h, s), 1e-7);
  }
}

TEST(Integrate, ConfigValidation) {
  EXPECT_THROW((IntegratorConfig{Method::rk4, 0.0, 1.0}.validate()), std::invalid_argument);
  EXPECT_THROW((IntegratorConfig{Method::rk4, 1e-3, -1.0}.validate()), std::invalid_argument);
  EXPECT_EQ((IntegratorConfig{Method::rk4, 1e-3, kTwoPi}.sample_count()), 6284u);
  EXPECT_EQ(parse_method(to_string(Method::leapfrog)), Method::leapfrog);
}

TEST(Integrate, HarmonicPeriodReturnsToStart) {
  const IntegratorConfig cfg{Method::rk4, 1e-3, kTwoPi};
  const auto traj = integrate(flow_field(FlowSpec::standard(), Potential::harmonic(), kUnitInf), {1.0, 0.0}, cfg);
  EXPECT_EQ(traj.size(), 6284u);
  EXPECT_EQ(traj.front().t, 0.0);
  EXPECT_DOUBLE_EQ(traj.back().t, kTwoPi);
  EXPECT_NEAR(traj.back().state.x, 1.0, 1e-6);
  EXPECT_NEAR(traj.back().state.p, 0.0, 1e-6);
  EXPECT_EQ(traj.energy(), 0.5);
  for (std::size_t k = 1; k < traj.size(); ++k) ASSERT_LT(traj.samples()[k - 1].t, traj.samples()[k].t);
}

TEST(Integrate, FreeParticleIsLinear) {
  const SystemParams params(2.0, Lambda::infinite());
  const auto traj = integrate(flow_field(FlowSpec::standard(), Potential::free(), params), {0.5, 3.0},
                              {Method::rk4, 0.01, 2.0});
  for (const auto& s : traj.samples()) {
    EXPECT_NEAR(s.state.x, 0.5 + 1.5 * s.t, 1e-12);
    EXPECT_EQ(s.state.p, 3.0);
  }
}

// x(t) = cos(e^{−1/8} t), p = −sin(e^{−1/8} t) for V = x²/2, m = 1.
TEST(Integrate, MultiplicativeFlowMatchesAnalyticSolution) {
  const SystemParams params(1.0, Lambda(2.0));
  const auto traj = integrate(flow_field(FlowSpec::multiplicative(), Potential::harmonic(), params), {1.0, 0.0},
                              {Method::rk4, 1e-3, 1.0});
  EXPECT_NEAR(traj.back().state.x, 0.6352247001339443073, 1e-10);
  EXPECT_NEAR(traj.back().state.p, -0.77232737899140966239, 1e-10);
}

TEST(Integrate, LeapfrogOnlyForStandardFlow) {
  EXPECT_THROW(integrate(flow_field(FlowSpec::hierarchy(2), Potential::harmonic(), kUnitInf), {1.0, 0.0},
                         {Method::leapfrog, 1e-2, 1.0}),
               std::invalid_argument);
}

TEST(Integrate, LeapfrogEnergyStaysBounded) {
  const auto v = Potential::harmonic();
  const auto traj = integrate(flow_field(FlowSpec::standard(), v, kUnitInf), {1.0, 0.0},
                              {Method::leapfrog, 0.05, 1000.0});
  EXPECT_LT(energy_drift(traj, v, kUnitInf), 1e-3);
}

TEST(Integrate, BlowUpIsReported) {
  const auto v = Potential::polynomial({0, 0, 0, 0, 0, 0, 1});
  try {
    integrate(flow_field(FlowSpec::standard(), v, kUnitInf), {3.0, 0.0}, {Method::rk4, 0.5, 20.0});
    FAIL() << "expected NumericalBlowUp";
  } catch (const NumericalBlowUp& e) {
    EXPECT_GE(e.last_good_time(), 0.0);
    EXPECT_LT(e.last_good_time(), 20.0);
  }
}

TEST(Integrate, Rk4DriftIsFourthOrder) {
  const auto v = Potential::quartic(1.0, 0.5);
  const PhaseState start{1.2, 0.3};
  const FlowField field(FlowSpec::standard(), v, kUnitInf);
  const double coarse = energy_drift(integrate(field, start, {Method::rk4, 0.1, 10.0}), v, kUnitInf);
  const double fine = energy_drift(integrate(field, start, {Method::rk4, 0.05, 10.0}), v, kUnitInf);
  EXPECT_GT(coarse, 1e-10);
  EXPECT_GE(coarse / fine, 15.0);
}

TEST(Integrate, ArbitraryFieldMatchesBuiltin) {
  const auto v = Potential::harmonic();
  const FlowField field(FlowSpec::standard(), v, kUnitInf);
  const IntegratorConfig cfg{Method::rk4, 0.01, 1.0};
  const auto a = integrate(field, {1.0, 0.0}, cfg);
  const auto b = integrate_field([&](const PhaseState& s) { return field(s); }, {1.0, 0.0}, cfg, 0.5);
  ASSERT_EQ(a.size(), b.size());
  EXPECT_NEAR(a.back().state.x, b.back().state.x, 1e-14);
  EXPECT_NEAR(a.back().state.p, b.back().state.p, 1e-14);
}

TEST(Rates, Examples) {
  const SystemParams params(1.0, Lambda(2.0));
  EXPECT_EQ(rate_factor(FlowSpec::standard(), 2.0, params), 1.0);
  EXPECT_DOUBLE_EQ(rate_factor(FlowSpec::hierarchy(3), 2.0, params), 12.0);
  EXPECT_DOUBLE_EQ(rate_factor(FlowSpec::multiplicative(), 2.0, params), std::exp(-0.5));
  EXPECT_DOUBLE_EQ(printed_rate_factor(FlowSpec::hierarchy(3), 2.0, params), 2.0 * 8.0 / 16.0);
  EXPECT_DOUBLE_EQ(printed_rate_factor(FlowSpec::multiplicative(), 2.0, params), 2.0 * 2.0 / 0.5);
}

TEST(Rates, WeightedFactorsSumToMultiplicative) {
  for (double e : {0.1, 1.0, 3.0}) {
    const SystemParams params(1.0, Lambda(1.5));
    double sum = 0.0;
    for (int j = 1; j <= 40; ++j) sum += weighted_rate_factor(j, e, params);
    EXPECT_NEAR(sum, rate_factor(FlowSpec::multiplicative(), e, params), 1e-14);
  }
  EXPECT_EQ(weighted_rate_factor(3, 1.0, kUnitInf), 0.0);
  EXPECT_EQ(weighted_rate_factor(1, 1.0, kUnitInf), 1.0);
}

TEST(Rates, FlowsTraceTheSameOrbit) {
  const auto v = Potential::quartic(1.0, 0.4);
  const SystemParams params(1.0, Lambda(2.0));
  const PhaseState start{1.0, 0.0};
  const IntegratorConfig cfg{Method::rk4, 1e-3, 8.0};
  const auto reference = integrate(flow_field(FlowSpec::standard(), v, params), start, cfg);
  for (const auto& spec : {FlowSpec::hierarchy(2), FlowSpec::hierarchy(3), FlowSpec::multiplicative()}) {
    const auto traj = integrate(flow_field(spec, v, params), start, cfg);
    EXPECT_LT(coincidence_metric(traj, reference), 1e-5) << spec.label();
  }
}

TEST(Rates, CoincidenceDetectsDifferentOrbits) {
  const auto v = Potential::harmonic();
  const IntegratorConfig cfg{Method::rk4, 1e-2, kTwoPi};
  const FlowField field(FlowSpec::standard(), v, kUnitInf);
  const auto inner = integrate(field, {1.0, 0.0}, cfg);
  const auto outer = integrate(field, {1.5, 0.0}, cfg);
  EXPECT_NEAR(coincidence_metric(inner, outer), 0.5, 1e-3);
}

TEST(Rates, DerivedFactorRescalesTime) {
  const auto v = Potential::harmonic();
  const PhaseState start{1.0, 0.0};
  const IntegratorConfig cfg{Method::rk4, 1e-3, 1.0};
  for (double lam : {1.0, 2.0, 10.0}) {
    const SystemParams params(1.0, Lambda(lam));
    for (const auto& spec : {FlowSpec::hierarchy(2), FlowSpec::hierarchy(3), FlowSpec::multiplicative()})
      EXPECT_LT(rescaling_check(spec, v, params, start, cfg), 1e-5) << spec.label() << " " << lam;
  }
}

TEST(Rates, PrintedFactorDoesNotRescaleTime) {
  const auto v = Potential::harmonic();
  const SystemParams params(1.0, Lambda(2.0));
  const IntegratorConfig cfg{Method::rk4, 1e-3, 1.0};
  EXPECT_GT(rescaling_check(FlowSpec::hierarchy(2), v, params, {1.0, 0.0}, cfg, RateConvention::printed), 1e-2);
}

}  // namespace
}  // namespace hamflow::dynamics
