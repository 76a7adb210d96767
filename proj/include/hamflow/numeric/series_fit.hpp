#pragma once

#include <functional>
#include <span>
#include <vector>

namespace hamflow::numeric {

/// Least-squares polynomial fit g(h) ≈ Σ_k c_k h^k on (0, h_max] at interior
/// Chebyshev nodes. Returns c_0 .. c_{n_coeffs-1}. g is never evaluated at
/// h = 0, so callers may map h to a finite λ.
std::vector<double> fit_power_series(const std::function<double(double)>& g, double h_max,
                                     std::size_t n_coeffs, int degree = 16, int nodes = 40);

/// Value at h = 0 of the interpolating polynomial through (h_i, y_i)
/// (Neville / Richardson extrapolation).
double extrapolate_to_zero(std::span<const double> h, std::span<const double> y);

}  // namespace hamflow::numeric
