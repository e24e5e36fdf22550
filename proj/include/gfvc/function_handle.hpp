#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace gfvc {

using RealFn = std::function<double(double)>;

struct Interval {
  double a = 0.0;
  double b = 1.0;
  double length() const { return b - a; }
  bool contains(double t) const { return t >= a && t <= b; }
};

/// One component of a trajectory. Derivatives are optional; see
/// FunctionHandle::derivative for the fallback.
struct ScalarFunction {
  RealFn value;
  RealFn derivative;
  RealFn second_derivative;
};

/// Scalar or vector function on [a, b].
///
/// When a component has no analytic derivative, derivative() uses 4th-order
/// central differences with step (b - a) * 1e-4, switching to one-sided
/// 4th-order stencils where the central one would leave [a, b].
class FunctionHandle {
 public:
  FunctionHandle() = default;
  FunctionHandle(std::vector<ScalarFunction> components, Interval domain);

  static FunctionHandle scalar(RealFn value, RealFn derivative, Interval domain,
                               RealFn second = {});
  static FunctionHandle scalar(RealFn value, Interval domain);
  static FunctionHandle constant(double c, Interval domain);

  std::size_t dim() const { return components_.size(); }
  const Interval& domain() const { return domain_; }
  const ScalarFunction& component(std::size_t j) const { return components_[j]; }
  FunctionHandle component_handle(std::size_t j) const;

  double value(std::size_t j, double t) const { return components_[j].value(t); }
  std::vector<double> operator()(double t) const;

  bool has_derivative(std::size_t j) const { return static_cast<bool>(components_[j].derivative); }
  bool has_derivative() const;
  bool has_second_derivative(std::size_t j) const {
    return static_cast<bool>(components_[j].second_derivative);
  }
  double derivative(std::size_t j, double t) const;
  /// Analytic second derivative; throws UsageError if absent.
  double second_derivative(std::size_t j, double t) const;

  /// Derivative as a standalone callable (analytic or finite-difference).
  RealFn derivative_fn(std::size_t j) const;

 private:
  std::vector<ScalarFunction> components_;
  Interval domain_;
};

/// 4th-order finite-difference derivative of f at t restricted to [a, b].
double fd_derivative(const RealFn& f, double t, const Interval& domain, double step);

}  // namespace gfvc
