#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hamflow {

enum class PotentialFamily { free, harmonic, quartic, polynomial };

std::string_view to_string(PotentialFamily family);
/// Throws std::invalid_argument for unknown names.
PotentialFamily parse_potential_family(std::string_view name);

/// Analytic potential energy V(x) from a small built-in family.
///
///   free        V = 0                         (no coefficients)
///   harmonic    V = k x²/2                    {k}
///   quartic     V = k x²/2 + g x⁴/4           {k, g}
///   polynomial  V = c0 + c1 x + ... + cn xⁿ   {c0, ..., cn}, non-empty
class Potential {
 public:
  Potential(PotentialFamily family, std::vector<double> coefficients);

  static Potential free() { return {PotentialFamily::free, {}}; }
  static Potential harmonic(double k = 1.0) { return {PotentialFamily::harmonic, {k}}; }
  static Potential quartic(double k, double g) { return {PotentialFamily::quartic, {k, g}}; }
  static Potential polynomial(std::vector<double> c) {
    return {PotentialFamily::polynomial, std::move(c)};
  }

  double eval(double x) const;
  /// dV/dx, analytic.
  double grad(double x) const;

  PotentialFamily family() const noexcept { return family_; }
  std::span<const double> coefficients() const noexcept { return coefficients_; }

 private:
  PotentialFamily family_;
  std::vector<double> coefficients_;
};

}  // namespace hamflow
