#include "hamflow/system.hpp"

#include <cmath>
#include <stdexcept>

#include "hamflow/errors.hpp"

namespace hamflow {

Lambda::Lambda(double value) : value_(value), infinite_(false) {
  if (!(std::isfinite(value) && value > 0.0))
    throw std::invalid_argument("lambda must be finite and > 0 (use Lambda::infinite())");
}

double Lambda::value() const {
  if (infinite_) throw DomainError("lambda is INFINITE; no finite value");
  return value_;
}

SystemParams::SystemParams(double mass, Lambda lambda) : mass_(mass), lambda_(lambda) {
  if (!(std::isfinite(mass) && mass > 0.0)) throw std::invalid_argument("mass must be > 0");
}

double SystemParams::energy_scale() const {
  if (lambda_.is_infinite())
    throw DomainError("m*lambda^2 is undefined for lambda = INFINITE; use the additive branch");
  const double l = lambda_.value();
  return mass_ * l * l;
}

}  // namespace hamflow
