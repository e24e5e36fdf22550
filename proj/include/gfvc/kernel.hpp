#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace gfvc {

enum class KernelKind {
  riemann_liouville,
  hadamard,
  variable_order,
  exponential,
  constant_one,
};

std::string_view to_string(KernelKind kind);
/// Inverse of to_string; throws UsageError for an unknown name.
KernelKind kernel_kind_from_string(std::string_view name);

/// Order function alpha(x, t) of a variable-order kernel.
using OrderFunction = std::function<double(double, double)>;

struct KernelParams {
  double order = 0.5;        ///< riemann_liouville, hadamard
  double coefficient = 0.0;  ///< exponential: k(x,t) = exp(c (x - t))
  OrderFunction order_fn;    ///< variable_order
  /// Square [lo, hi]^2 sampled to find the smallest variable order.
  double sample_lo = 0.0;
  double sample_hi = 1.0;
  int sample_count = 65;
};

/// Documented hypotheses for the integration-by-parts theorems. They are
/// statements about the kernel family, not runtime checks.
struct Admissibility {
  bool square_integrable_on_square = false;
  bool l1_difference = false;

  bool any() const { return square_integrable_on_square || l1_difference; }
};

/// One-sided kernel k(x, t), evaluated for t < x. The right branch of a
/// K-op uses k(t, x) with x < t, so the first argument is always the larger.
///
/// Near the diagonal k(x, t) ~ C (x - t)^sigma with sigma = singularity
/// exponent; sigma < 0 marks a weakly singular kernel.
class Kernel {
 public:
  KernelKind kind() const { return kind_; }
  /// The alpha the kernel realizes; empty for exponential and constant_one.
  std::optional<double> order() const { return order_; }
  double coefficient() const { return coefficient_; }
  double singularity_exponent() const { return sigma_; }
  bool is_singular() const { return sigma_ < 0.0; }
  bool is_difference() const { return is_difference_; }
  bool has_variable_order() const { return kind_ == KernelKind::variable_order; }
  Admissibility admissibility() const { return admissibility_; }

  double eval(double x, double t) const;
  double operator()(double x, double t) const { return eval(x, t); }

  /// k(x, t) (x - t)^(-sigma), the bounded factor left after pulling out the
  /// diagonal singularity. Computed without forming the two powers where the
  /// kernel form allows it.
  double regularized(double x, double t) const;

  /// k(x, t) with the distance x - t supplied as `gap`, for nodes so close to
  /// the diagonal that x - t is not representable.
  double eval_with_gap(double x, double t, double gap) const;

  /// Same family with a different order (riemann_liouville, hadamard only).
  Kernel with_order(double order) const;

  std::string describe() const;

 private:
  friend Kernel make_kernel(KernelKind kind, const KernelParams& params);

  KernelKind kind_ = KernelKind::constant_one;
  std::optional<double> order_;
  double coefficient_ = 0.0;
  double sigma_ = 0.0;
  double inv_gamma_ = 1.0;
  bool is_difference_ = true;
  Admissibility admissibility_;
  std::shared_ptr<const OrderFunction> order_fn_;
};

/// Throws DomainError for orders outside (0, 1) or variable-order functions
/// whose samples leave (0, 1).
Kernel make_kernel(KernelKind kind, const KernelParams& params = {});

Kernel riemann_liouville_kernel(double order);
Kernel hadamard_kernel(double order);
Kernel exponential_kernel(double coefficient);
Kernel constant_one_kernel();
Kernel variable_order_kernel(OrderFunction fn, double lo, double hi);

}  // namespace gfvc
