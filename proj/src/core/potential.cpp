#include "hamflow/potential.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hamflow {

std::string_view to_string(PotentialFamily family) {
  switch (family) {
    case PotentialFamily::free:
      return "free";
    case PotentialFamily::harmonic:
      return "harmonic";
    case PotentialFamily::quartic:
      return "quartic";
    case PotentialFamily::polynomial:
      return "polynomial";
  }
  return "unknown";
}

PotentialFamily parse_potential_family(std::string_view name) {
  for (auto f : {PotentialFamily::free, PotentialFamily::harmonic, PotentialFamily::quartic,
                 PotentialFamily::polynomial}) {
    if (to_string(f) == name) return f;
  }
  throw std::invalid_argument("unknown potential family '" + std::string(name) + "'");
}

namespace {

std::size_t expected_arity(PotentialFamily family) {
  switch (family) {
    case PotentialFamily::free:
      return 0;
    case PotentialFamily::harmonic:
      return 1;
    case PotentialFamily::quartic:
      return 2;
    case PotentialFamily::polynomial:
      return 0;  // variable
  }
  return 0;
}

}  // namespace

Potential::Potential(PotentialFamily family, std::vector<double> coefficients)
    : family_(family), coefficients_(std::move(coefficients)) {
  for (double c : coefficients_) {
    if (!std::isfinite(c)) throw std::invalid_argument("potential coefficients must be finite");
  }
  if (family_ == PotentialFamily::polynomial) {
    if (coefficients_.empty())
      throw std::invalid_argument("polynomial potential needs at least one coefficient");
  } else if (coefficients_.size() != expected_arity(family_)) {
    throw std::invalid_argument(std::string(to_string(family_)) + " potential takes " +
                                std::to_string(expected_arity(family_)) + " coefficient(s), got " +
                                std::to_string(coefficients_.size()));
  }
}

double Potential::eval(double x) const {
  switch (family_) {
    case PotentialFamily::free:
      return 0.0;
    case PotentialFamily::harmonic:
      return 0.5 * coefficients_[0] * x * x;
    case PotentialFamily::quartic: {
      const double x2 = x * x;
      return 0.5 * coefficients_[0] * x2 + 0.25 * coefficients_[1] * x2 * x2;
    }
    case PotentialFamily::polynomial: {
      // Horner
      double v = 0.0;
      for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) v = v * x + *it;
      return v;
    }
  }
  return 0.0;
}

double Potential::grad(double x) const {
  switch (family_) {
    case PotentialFamily::free:
      return 0.0;
    case PotentialFamily::harmonic:
      return coefficients_[0] * x;
    case PotentialFamily::quartic:
      return coefficients_[0] * x + coefficients_[1] * x * x * x;
    case PotentialFamily::polynomial: {
      double d = 0.0;
      for (std::size_t i = coefficients_.size() - 1; i >= 1; --i)
        d = d * x + static_cast<double>(i) * coefficients_[i];
      return d;
    }
  }
  return 0.0;
}

}  // namespace hamflow
