#include "hamflow/numeric/root_finding.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "hamflow/errors.hpp"

namespace hamflow::numeric {

namespace {

bool converged(double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  return std::abs(b - a) <= 2.0 * eps * std::max(std::abs(a), std::abs(b)) + 1e-300;
}

}  // namespace

RootResult find_bracketed_root(const std::function<double(double)>& f, double lo, double hi,
                               const RootOptions& opts) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi))
    throw NoRootError("invalid search bracket");
  const int n = std::max(1, opts.scan_intervals);

  std::vector<double> xs(n + 1), fs(n + 1);
  for (int i = 0; i <= n; ++i) {
    xs[i] = i == n ? hi : lo + (hi - lo) * static_cast<double>(i) / n;
    fs[i] = f(xs[i]);
  }

  int roots = 0;
  int seg = -1;
  for (int i = 0; i <= n; ++i) {
    if (fs[i] == 0.0) {
      ++roots;
      seg = i;
      continue;
    }
    if (i < n && std::isfinite(fs[i]) && std::isfinite(fs[i + 1]) && fs[i + 1] != 0.0 &&
        std::signbit(fs[i]) != std::signbit(fs[i + 1])) {
      ++roots;
      seg = i;
    }
  }
  if (roots == 0) {
    std::ostringstream os;
    os << "no sign change in [" << lo << ", " << hi << "] (f(lo)=" << fs.front()
       << ", f(hi)=" << fs.back() << ")";
    throw NoRootError(os.str());
  }
  if (roots > 1) {
    std::ostringstream os;
    os << roots << " sign changes in [" << lo << ", " << hi << "]; shrink the domain box";
    throw AmbiguousRootError(os.str());
  }
  if (fs[seg] == 0.0) return {xs[seg], 0.0, 0};

  double a = xs[seg], fa = fs[seg];
  double b = xs[seg + 1], fb = fs[seg + 1];
  // Secant iterates; the bracket [a, b] guards them.
  double x0 = a, f0 = fa;
  double x1 = b, f1 = fb;
  double best = std::abs(fa) < std::abs(fb) ? a : b;
  double fbest = std::min(std::abs(fa), std::abs(fb));
  int stalls = 0;
  int it = 0;
  for (; it < opts.max_iterations && !converged(a, b); ++it) {
    double x = 0.5 * (a + b);
    if (f1 != f0 && stalls < 2) {
      const double s = x1 - f1 * (x1 - x0) / (f1 - f0);
      if (s > a && s < b) x = s;
    }
    const double fx = f(x);
    if (!std::isfinite(fx)) throw NoRootError("non-finite function value during refinement");
    if (std::abs(fx) < fbest) {
      fbest = std::abs(fx);
      best = x;
    }
    if (fx == 0.0) break;
    const double width = b - a;
    if (std::signbit(fx) == std::signbit(fa)) {
      a = x;
      fa = fx;
    } else {
      b = x;
      fb = fx;
    }
    stalls = (b - a) > 0.5 * width ? stalls + 1 : 0;
    x0 = x1;
    f0 = f1;
    x1 = x;
    f1 = fx;
  }

  if (!(fbest <= opts.residual_tol)) {
    std::ostringstream os;
    os << "root refinement did not reach residual " << opts.residual_tol << " (best " << fbest
       << " at " << best << " after " << it << " iterations)";
    throw NoRootError(os.str());
  }
  return {best, fbest, it};
}

}  // namespace hamflow::numeric
