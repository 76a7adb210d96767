#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "hamflow/errors.hpp"
#include "hamflow/numeric/finite_difference.hpp"
#include "hamflow/numeric/quadrature.hpp"
#include "hamflow/numeric/root_finding.hpp"
#include "hamflow/numeric/series_fit.hpp"

namespace hamflow::numeric {
namespace {

TEST(AdaptiveSimpson, PolynomialsAreExact) {
  // Simpson is exact through cubics.
  const auto cubic = [](double x) { return 1.0 - x + 2.0 * x * x * x; };
  EXPECT_NEAR(adaptive_simpson(cubic, -1.0, 2.0, 1e-14), 3.0 - 1.5 + 7.5, 1e-13);
  EXPECT_EQ(adaptive_simpson(cubic, 1.0, 1.0, 1e-14), 0.0);
}

TEST(AdaptiveSimpson, GaussianAgainstErf) {
  const auto g = [](double v) { return std::exp(-0.5 * v * v); };
  for (double u : {0.1, 1.0, 2.5, 6.0}) {
    const double ref = std::sqrt(std::numbers::pi / 2.0) * std::erf(u / std::numbers::sqrt2);
    EXPECT_NEAR(adaptive_simpson(g, 0.0, u, 1e-14), ref, 1e-13) << u;
  }
}

TEST(RootFinding, FindsSimpleRoots) {
  const auto r = find_bracketed_root([](double x) { return x * x - 2.0; }, 0.0, 3.0);
  EXPECT_NEAR(r.root, std::numbers::sqrt2, 1e-14);
  EXPECT_LE(std::abs(r.residual), 1e-10);
  EXPECT_GT(r.iterations, 0);

  const auto c = find_bracketed_root([](double x) { return std::cos(x) - x; }, -1.0, 2.0);
  EXPECT_NEAR(c.root, 0.7390851332151607, 1e-14);
}

TEST(RootFinding, RootAtEndpointOrExactZero) {
  const auto r = find_bracketed_root([](double x) { return x - 1.0; }, 1.0, 4.0);
  EXPECT_EQ(r.root, 1.0);
  const auto z = find_bracketed_root([](double x) { return x; }, -1.0, 1.0);
  EXPECT_EQ(z.root, 0.0);
}

TEST(RootFinding, ErrorsOnMissingOrMultipleRoots) {
  EXPECT_THROW(find_bracketed_root([](double x) { return x * x + 1.0; }, -2.0, 2.0), NoRootError);
  EXPECT_THROW(find_bracketed_root([](double x) { return std::sin(x); }, -4.0, 4.0),
               AmbiguousRootError);
  EXPECT_THROW(find_bracketed_root([](double x) { return x; }, 2.0, 1.0), NoRootError);
}

TEST(RootFinding, SteepMonotoneFunction) {
  // Secant alone stalls on this shape; the bisection guard must take over.
  const auto f = [](double x) { return std::tanh(50.0 * (x - 0.3)); };
  const auto r = find_bracketed_root(f, -1.0, 1.0);
  EXPECT_NEAR(r.root, 0.3, 1e-12);
}

TEST(SeriesFit, RecoversTaylorCoefficients) {
  // 1/(1 + h) = Σ (−h)^k
  const auto c = fit_power_series([](double h) { return 1.0 / (1.0 + h); }, 0.5, 5, 18, 60);
  double expected = 1.0;
  for (double v : c) {
    EXPECT_NEAR(v, expected, 1e-6);
    expected = -expected;
  }
}

TEST(SeriesFit, ExactOnPolynomials) {
  const auto c = fit_power_series([](double h) { return 2.0 - 3.0 * h + 0.5 * h * h; }, 1.0, 4, 6, 20);
  EXPECT_NEAR(c[0], 2.0, 1e-13);
  EXPECT_NEAR(c[1], -3.0, 1e-12);
  EXPECT_NEAR(c[2], 0.5, 1e-11);
  EXPECT_NEAR(c[3], 0.0, 1e-10);
}

TEST(SeriesFit, ArgumentChecks) {
  const auto f = [](double h) { return h; };
  EXPECT_THROW(fit_power_series(f, 0.0, 2), std::invalid_argument);
  EXPECT_THROW(fit_power_series(f, 1.0, 5, 3, 10), std::invalid_argument);
  EXPECT_THROW(fit_power_series(f, 1.0, 2, 8, 4), std::invalid_argument);
}

TEST(Extrapolation, RemovesLeadingErrorTerms) {
  // y(h) = 1 + 2h + 3h² sampled at three h; the quadratic is reproduced.
  const std::vector<double> h{0.25, 0.0625, 0.015625};
  std::vector<double> y;
  for (double v : h) y.push_back(1.0 + 2.0 * v + 3.0 * v * v);
  EXPECT_NEAR(extrapolate_to_zero(h, y), 1.0, 1e-14);
  EXPECT_THROW(extrapolate_to_zero(std::vector<double>{}, std::vector<double>{}),
               std::invalid_argument);
}

TEST(FiniteDifference, StepAndStencil) {
  EXPECT_DOUBLE_EQ(fd_step({0.5}), 1e-6);
  EXPECT_DOUBLE_EQ(fd_step({-3.0, 2.0}), 3e-6);
  const double d = central_difference([](double x) { return std::sin(x); }, 0.4, 1e-6);
  EXPECT_NEAR(d, std::cos(0.4), 1e-9);
}

}  // namespace
}  // namespace hamflow::numeric
