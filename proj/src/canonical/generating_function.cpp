#include <cmath>
#include <stdexcept>
#include <string>

#include "hamflow/canonical.hpp"
#include "hamflow/errors.hpp"

namespace hamflow::canonical {

namespace {

constexpr int kGrid = 16;

template <class Fn>
void for_each_grid_point(const DomainBox& box, Fn&& fn) {
  for (int i = 0; i <= kGrid; ++i) {
    const double q = box.old_arg.lo + (box.old_arg.hi - box.old_arg.lo) * i / kGrid;
    for (int k = 0; k <= kGrid; ++k) {
      const double nq = box.new_arg.lo + (box.new_arg.hi - box.new_arg.lo) * k / kGrid;
      fn(q, nq);
    }
  }
}

BaseGenerator bilinear(std::string name, double c) {
  // F = c·q·Q
  return {std::move(name),
          [c](double q, double n, double) { return c * q * n; },
          [c](double, double n, double) { return c * n; },
          [c](double q, double, double) { return c * q; },
          [](double, double, double) { return 0.0; },
          false};
}

}  // namespace

GeneratingFunctionSpec::GeneratingFunctionSpec(CtType type, BaseGenerator base, DomainBox box,
                                               SystemParams params)
    : type_(type), base_(std::move(base)), box_(box), params_(params) {
  if (!(box_.old_arg.lo < box_.old_arg.hi) || !(box_.new_arg.lo < box_.new_arg.hi))
    throw std::invalid_argument("generating-function domain box has an empty interval");
  if (!base_.value || !base_.d_old || !base_.d_new || !base_.d_t)
    throw std::invalid_argument("generating function needs a value and all three partials");
  degenerate_ = true;
  for_each_grid_point(box_, [&](double q, double n) {
    if (base_.d_old(q, n, 0.0) != 0.0 || base_.d_new(q, n, 0.0) != 0.0) degenerate_ = false;
  });
  if (params_.lambda().is_infinite()) return;
  const double scale = params_.energy_scale();
  for_each_grid_point(box_, [&](double q, double n) {
    if (!(base_.value(q, n, 0.0) > -scale))
      throw DomainError("F <= -m*lambda^2 inside the domain box of '" + base_.name +
                        "'; the lambda-lift logarithm is undefined there");
  });
}

double GeneratingFunctionSpec::lift_factor(double q, double new_arg, double t) const {
  if (params_.lambda().is_infinite()) return 1.0;
  const double denom = 1.0 + base_.value(q, new_arg, t) / params_.energy_scale();
  if (!(denom > 0.0)) throw DomainError("F <= -m*lambda^2: outside the lambda-lift domain");
  return 1.0 / denom;
}

double GeneratingFunctionSpec::lifted(double q, double new_arg, double t) const {
  return f_lambda(base_.value(q, new_arg, t), params_);
}

double GeneratingFunctionSpec::lifted_d_old(double q, double new_arg, double t) const {
  return base_.d_old(q, new_arg, t) * lift_factor(q, new_arg, t);
}

double GeneratingFunctionSpec::lifted_d_new(double q, double new_arg, double t) const {
  return base_.d_new(q, new_arg, t) * lift_factor(q, new_arg, t);
}

double GeneratingFunctionSpec::lifted_d_t(double q, double new_arg, double t) const {
  return base_.d_t(q, new_arg, t) * lift_factor(q, new_arg, t);
}

std::vector<std::string> catalog_names() {
  return {"exchange", "scaled_exchange", "identity", "scaled_identity", "identity_p",
          "exchange_p"};
}

GeneratingFunctionSpec catalog_spec(std::string_view name, double alpha, const DomainBox& box,
                                    const SystemParams& params) {
  if (name == "exchange") return {CtType::type1, bilinear("exchange", 1.0), box, params};
  if (name == "scaled_exchange")
    return {CtType::type1, bilinear("scaled_exchange", alpha), box, params};
  if (name == "identity") return {CtType::type2, bilinear("identity", 1.0), box, params};
  if (name == "scaled_identity")
    return {CtType::type2, bilinear("scaled_identity", alpha), box, params};
  if (name == "identity_p") return {CtType::type3, bilinear("identity_p", -1.0), box, params};
  if (name == "exchange_p") return {CtType::type4, bilinear("exchange_p", 1.0), box, params};
  throw std::invalid_argument("unknown generating function '" + std::string(name) + "'");
}

double f_lambda(double f_value, const SystemParams& params) {
  if (params.lambda().is_infinite()) return f_value;
  const double scale = params.energy_scale();
  if (!(f_value > -scale))
    throw DomainError("F <= -m*lambda^2: logarithm branch point of the lambda-lift");
  return scale * std::log1p(f_value / scale);
}

double f_j(int j, double f_value) {
  if (j < 1) throw std::invalid_argument("hierarchy index j must be >= 1");
  double out = f_value;
  for (int i = 2; i <= j; ++i) out *= f_value * (i - 1);
  return out;
}

double f_lambda_series(hierarchy::TruncationOrder order, double f_value, const SystemParams& params) {
  if (params.lambda().is_infinite()) return f_value;
  const double scale = params.energy_scale();
  if (!(std::abs(f_value) < scale))
    throw DomainError("|F| >= m*lambda^2: outside the convergence radius of the F_j series");
  // term_j = (1/j!)(−1/mλ²)^{j−1} (j−1)! F^j, folded from term_{j−1}
  double term = f_value;
  double sum = term;
  for (int j = 2; j <= order.value(); ++j) {
    term *= -f_value / scale * (j - 1) / j;
    sum += term;
  }
  return sum;
}

}  // namespace hamflow::canonical
