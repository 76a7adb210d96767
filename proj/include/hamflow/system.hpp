#pragma once

namespace hamflow {

/// Velocity-scale parameter λ. The distinguished INFINITE value selects the
/// additive-limit branches exactly instead of evaluating a large float.
class Lambda {
 public:
  /// Throws std::invalid_argument unless value is finite and > 0.
  explicit Lambda(double value);

  static constexpr Lambda infinite() noexcept { return Lambda{}; }

  constexpr bool is_infinite() const noexcept { return infinite_; }
  /// Throws DomainError for INFINITE.
  double value() const;

  friend constexpr bool operator==(const Lambda&, const Lambda&) = default;

 private:
  constexpr Lambda() noexcept = default;
  double value_ = 0.0;
  bool infinite_ = true;
};

/// Mass m > 0 and λ.
class SystemParams {
 public:
  SystemParams(double mass, Lambda lambda);

  double mass() const noexcept { return mass_; }
  Lambda lambda() const noexcept { return lambda_; }

  /// m·λ², the energy scale of the multiplicative forms. Throws DomainError
  /// when λ is INFINITE.
  double energy_scale() const;

  SystemParams with_lambda(Lambda lambda) const { return {mass_, lambda}; }

 private:
  double mass_;
  Lambda lambda_;
};

}  // namespace hamflow
