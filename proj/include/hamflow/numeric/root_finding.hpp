#pragma once

#include <functional>

namespace hamflow::numeric {

struct RootOptions {
  /// |f(root)| must fall below this for the solve to succeed.
  double residual_tol = 1e-10;
  int max_iterations = 200;
  /// The bracket is scanned on this many subintervals to detect missing or
  /// multiple sign changes before refinement.
  int scan_intervals = 64;
};

struct RootResult {
  double root = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Bracketed 1-D root of f on [lo, hi]: a sign-change scan, then bisection
/// refined by safeguarded secant steps, iterated to full double precision.
///
/// Throws NoRootError when the scan finds no sign change or the refined
/// residual exceeds opts.residual_tol, and AmbiguousRootError when the scan
/// finds more than one.
RootResult find_bracketed_root(const std::function<double(double)>& f, double lo, double hi,
                               const RootOptions& opts = {});

}  // namespace hamflow::numeric
