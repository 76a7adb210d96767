#include "hamflow/numeric/series_fit.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hamflow::numeric {

std::vector<double> fit_power_series(const std::function<double(double)>& g, double h_max,
                                     std::size_t n_coeffs, int degree, int nodes) {
  if (!(h_max > 0.0)) throw std::invalid_argument("fit interval must be positive");
  if (degree < 0 || static_cast<std::size_t>(degree) + 1 < n_coeffs || nodes < degree + 1)
    throw std::invalid_argument("inconsistent fit degree / node count");

  // Least squares in the Chebyshev basis T_k(t), t = 2h/h_max − 1 ∈ [−1, 1];
  // the monomial Vandermonde is far too ill-conditioned at these degrees.
  Eigen::MatrixXd A(nodes, degree + 1);
  Eigen::VectorXd y(nodes);
  for (int i = 0; i < nodes; ++i) {
    const double t = -std::cos((2.0 * i + 1.0) * std::numbers::pi / (2.0 * nodes));
    A(i, 0) = 1.0;
    if (degree >= 1) A(i, 1) = t;
    for (int k = 2; k <= degree; ++k) A(i, k) = 2.0 * t * A(i, k - 1) - A(i, k - 2);
    y(i) = g(0.5 * (t + 1.0) * h_max);
  }
  Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);

  // Taylor coefficients at h = 0 (t = −1): differentiate the Chebyshev series
  // with c'_{k−1} = c'_{k+1} + 2k c_k and use T_k(−1) = (−1)^k.
  std::vector<double> out(n_coeffs);
  double factorial = 1.0;
  double chain = 1.0;  // (dt/dh)^k = (2/h_max)^k
  for (std::size_t k = 0; k < n_coeffs; ++k) {
    double at_minus_one = 0.0;
    for (Eigen::Index i = 0; i < c.size(); ++i) at_minus_one += (i % 2 == 0 ? 1.0 : -1.0) * c(i);
    out[k] = at_minus_one * chain / factorial;

    const Eigen::Index n = c.size();
    Eigen::VectorXd d = Eigen::VectorXd::Zero(std::max<Eigen::Index>(n - 1, 1));
    for (Eigen::Index i = n - 1; i >= 1; --i) {
      const double next = i + 1 < n - 1 ? d(i + 1) : 0.0;
      d(i - 1) = next + 2.0 * static_cast<double>(i) * c(i);
    }
    if (n > 1) d(0) *= 0.5;
    c = d;
    factorial *= static_cast<double>(k + 1);
    chain *= 2.0 / h_max;
  }
  return out;
}

double extrapolate_to_zero(std::span<const double> h, std::span<const double> y) {
  if (h.size() != y.size() || h.empty())
    throw std::invalid_argument("extrapolation needs matching, non-empty samples");
  std::vector<double> p(y.begin(), y.end());
  const std::size_t n = p.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      const double hi = h[i];
      const double hj = h[i + level];
      p[i] = (hi * p[i + 1] - hj * p[i]) / (hi - hj);
    }
  }
  return p[0];
}

}  // namespace hamflow::numeric
