#include "gfvc/function_handle.hpp"

#include <fmt/core.h>

#include "gfvc/errors.hpp"

namespace gfvc {

FunctionHandle::FunctionHandle(std::vector<ScalarFunction> components, Interval domain)
    : components_(std::move(components)), domain_(domain) {
  if (components_.empty()) throw UsageError("function handle needs at least one component");
  for (const auto& c : components_) {
    if (!c.value) throw UsageError("function handle component without a value map");
  }
  if (!(domain_.a < domain_.b)) throw DomainError("function handle domain requires a < b");
}

FunctionHandle FunctionHandle::scalar(RealFn value, RealFn derivative, Interval domain,
                                      RealFn second) {
  return FunctionHandle(
      {ScalarFunction{std::move(value), std::move(derivative), std::move(second)}}, domain);
}

FunctionHandle FunctionHandle::scalar(RealFn value, Interval domain) {
  return FunctionHandle({ScalarFunction{std::move(value), {}, {}}}, domain);
}

FunctionHandle FunctionHandle::constant(double c, Interval domain) {
  return scalar([c](double) { return c; }, [](double) { return 0.0; }, domain,
                [](double) { return 0.0; });
}

FunctionHandle FunctionHandle::component_handle(std::size_t j) const {
  return FunctionHandle({components_.at(j)}, domain_);
}

std::vector<double> FunctionHandle::operator()(double t) const {
  std::vector<double> out(components_.size());
  for (std::size_t j = 0; j < components_.size(); ++j) out[j] = components_[j].value(t);
  return out;
}

bool FunctionHandle::has_derivative() const {
  for (const auto& c : components_) {
    if (!c.derivative) return false;
  }
  return true;
}

double FunctionHandle::derivative(std::size_t j, double t) const {
  const auto& c = components_[j];
  if (c.derivative) return c.derivative(t);
  return fd_derivative(c.value, t, domain_, domain_.length() * 1e-4);
}

double FunctionHandle::second_derivative(std::size_t j, double t) const {
  const auto& c = components_[j];
  if (!c.second_derivative) {
    throw UsageError(fmt::format("component {} has no analytic second derivative", j));
  }
  return c.second_derivative(t);
}

RealFn FunctionHandle::derivative_fn(std::size_t j) const {
  const auto& c = components_[j];
  if (c.derivative) return c.derivative;
  RealFn f = c.value;
  Interval dom = domain_;
  return [f, dom](double t) { return fd_derivative(f, t, dom, dom.length() * 1e-4); };
}

double fd_derivative(const RealFn& f, double t, const Interval& domain, double h) {
  if (t - 2.0 * h >= domain.a && t + 2.0 * h <= domain.b) {
    return (f(t - 2.0 * h) - 8.0 * f(t - h) + 8.0 * f(t + h) - f(t + 2.0 * h)) / (12.0 * h);
  }
  if (t - 2.0 * h < domain.a) {
    return (-25.0 * f(t) + 48.0 * f(t + h) - 36.0 * f(t + 2.0 * h) + 16.0 * f(t + 3.0 * h) -
            3.0 * f(t + 4.0 * h)) /
           (12.0 * h);
  }
  return (25.0 * f(t) - 48.0 * f(t - h) + 36.0 * f(t - 2.0 * h) - 16.0 * f(t - 3.0 * h) +
          3.0 * f(t - 4.0 * h)) /
         (12.0 * h);
}

}  // namespace gfvc
