#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "hamflow/errors.hpp"
#include "hamflow/mechanics.hpp"
#include "hamflow/potential.hpp"
#include "hamflow/state.hpp"
#include "hamflow/system.hpp"

namespace hamflow {
namespace {

TEST(Potential, FamiliesEvaluate) {
  EXPECT_EQ(Potential::free().eval(3.0), 0.0);
  EXPECT_EQ(Potential::free().grad(3.0), 0.0);
  EXPECT_DOUBLE_EQ(Potential::harmonic(2.0).eval(3.0), 9.0);
  EXPECT_DOUBLE_EQ(Potential::harmonic(2.0).grad(3.0), 6.0);
  // kx²/2 + gx⁴/4 at x = 2
  EXPECT_DOUBLE_EQ(Potential::quartic(1.0, 0.5).eval(2.0), 2.0 + 2.0);
  EXPECT_DOUBLE_EQ(Potential::quartic(1.0, 0.5).grad(2.0), 2.0 + 4.0);
  // 1 − 2x + 3x²
  const auto poly = Potential::polynomial({1.0, -2.0, 3.0});
  EXPECT_DOUBLE_EQ(poly.eval(2.0), 9.0);
  EXPECT_DOUBLE_EQ(poly.grad(2.0), 10.0);
}

TEST(Potential, RejectsBadCoefficients) {
  EXPECT_THROW(Potential::polynomial({}), std::invalid_argument);
  EXPECT_THROW(Potential(PotentialFamily::harmonic, {}), std::invalid_argument);
  EXPECT_THROW(Potential(PotentialFamily::quartic, {1.0}), std::invalid_argument);
  EXPECT_THROW(Potential(PotentialFamily::free, {1.0}), std::invalid_argument);
  EXPECT_THROW(Potential::harmonic(std::nan("")), std::invalid_argument);
}

TEST(Potential, NamesRoundTrip) {
  for (auto f : {PotentialFamily::free, PotentialFamily::harmonic, PotentialFamily::quartic,
                 PotentialFamily::polynomial})
    EXPECT_EQ(parse_potential_family(to_string(f)), f);
  EXPECT_THROW(parse_potential_family("morse"), std::invalid_argument);
}

TEST(Potential, GradientMatchesCentralDifference) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  const Potential potentials[] = {Potential::free(), Potential::harmonic(1.7),
                                  Potential::quartic(-1.0, 0.3),
                                  Potential::polynomial({0.5, -1.0, 0.25, 0.1, -0.02})};
  for (const auto& v : potentials) {
    for (int i = 0; i < 100; ++i) {
      const double x = dist(rng);
      const double h = 1e-5 * std::max(1.0, std::abs(x));
      const double fd = (v.eval(x + h) - v.eval(x - h)) / (2.0 * h);
      EXPECT_LT(std::abs(v.grad(x) - fd) / std::max(1.0, std::abs(v.grad(x))), 1e-6)
          << to_string(v.family()) << " at x=" << x;
    }
  }
}

TEST(SystemParams, Validation) {
  EXPECT_THROW(SystemParams(0.0, Lambda::infinite()), std::invalid_argument);
  EXPECT_THROW(SystemParams(-1.0, Lambda(1.0)), std::invalid_argument);
  EXPECT_THROW(Lambda(0.0), std::invalid_argument);
  EXPECT_THROW(Lambda(-2.0), std::invalid_argument);
  EXPECT_THROW((void)Lambda(INFINITY), std::invalid_argument);
  EXPECT_THROW((void)Lambda(NAN), std::invalid_argument);

  const SystemParams p(2.0, Lambda(3.0));
  EXPECT_DOUBLE_EQ(p.energy_scale(), 18.0);
  EXPECT_TRUE(Lambda::infinite().is_infinite());
  EXPECT_THROW((void)Lambda::infinite().value(), DomainError);
  EXPECT_THROW((void)SystemParams(1.0, Lambda::infinite()).energy_scale(), DomainError);
  EXPECT_EQ(p.with_lambda(Lambda::infinite()).lambda(), Lambda::infinite());
}

TEST(Mechanics, KineticEnergyExamples) {
  EXPECT_EQ(kinetic_energy({0.0, 0.0}, SystemParams(1.0, Lambda::infinite())), 0.0);
  EXPECT_DOUBLE_EQ(kinetic_energy({3.0, 2.0}, SystemParams(1.0, Lambda::infinite())), 2.0);
  EXPECT_DOUBLE_EQ(kinetic_energy({0.0, 2.0}, SystemParams(4.0, Lambda::infinite())), 0.5);
}

TEST(Mechanics, AdditiveHamiltonianExamples) {
  const SystemParams unit(1.0, Lambda::infinite());
  EXPECT_EQ(additive_hamiltonian({1.0, 0.0}, Potential::free(), unit), 0.0);
  EXPECT_DOUBLE_EQ(additive_hamiltonian({1.0, 1.0}, Potential::harmonic(), unit), 1.0);
  EXPECT_DOUBLE_EQ(additive_hamiltonian({0.0, 2.0}, Potential::harmonic(), unit), 2.0);
}

TEST(Mechanics, HamiltonianEvenInMomentum) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  const auto v = Potential::quartic(1.0, 0.2);
  const SystemParams p(1.3, Lambda(2.0));
  for (int i = 0; i < 100; ++i) {
    const PhaseState s{dist(rng), dist(rng)};
    EXPECT_EQ(additive_hamiltonian(s, v, p), additive_hamiltonian({s.x, -s.p}, v, p));
  }
}

TEST(State, KineticPhaseRoundTrip) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (double m : {0.5, 1.0, 3.0}) {
    for (int i = 0; i < 100; ++i) {
      const KineticState k{dist(rng), dist(rng)};
      const KineticState back = to_kinetic(to_phase(k, m), m);
      EXPECT_EQ(back.x, k.x);
      EXPECT_NEAR(back.xdot, k.xdot, 4e-16 * std::abs(k.xdot));
    }
  }
}

TEST(Trajectory, Invariants) {
  EXPECT_THROW(Trajectory({}, 0.0), std::invalid_argument);
  EXPECT_THROW(Trajectory({{0.0, {}}, {0.0, {}}}, 0.0), std::invalid_argument);
  EXPECT_THROW(Trajectory({{1.0, {}}, {0.5, {}}}, 0.0), std::invalid_argument);
  const Trajectory t({{0.0, {1.0, 0.0}}, {0.5, {0.9, -0.1}}}, 0.5);
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(t.back().state.x, 0.9);
  EXPECT_EQ(t.energy(), 0.5);
}

}  // namespace
}  // namespace hamflow
