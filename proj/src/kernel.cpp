#include "gfvc/kernel.hpp"

#include <fmt/core.h>

#include <cmath>
#include <limits>

#include "gfvc/errors.hpp"
#include "gfvc/gamma.hpp"

namespace gfvc {

namespace {

void require_unit_order(double order, KernelKind kind) {
  if (!(order > 0.0 && order < 1.0)) {
    throw DomainError(
        fmt::format("{} kernel requires order in (0,1), got {}", to_string(kind), order));
  }
}

}  // namespace

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::riemann_liouville: return "riemann_liouville";
    case KernelKind::hadamard: return "hadamard";
    case KernelKind::variable_order: return "variable_order";
    case KernelKind::exponential: return "exponential";
    case KernelKind::constant_one: return "constant_one";
  }
  return "unknown";
}

KernelKind kernel_kind_from_string(std::string_view name) {
  for (auto kind : {KernelKind::riemann_liouville, KernelKind::hadamard, KernelKind::variable_order,
                    KernelKind::exponential, KernelKind::constant_one}) {
    if (to_string(kind) == name) return kind;
  }
  throw UsageError(fmt::format("unknown kernel kind '{}'", name));
}

Kernel make_kernel(KernelKind kind, const KernelParams& params) {
  Kernel k;
  k.kind_ = kind;
  switch (kind) {
    case KernelKind::riemann_liouville:
      require_unit_order(params.order, kind);
      k.order_ = params.order;
      k.sigma_ = params.order - 1.0;
      k.inv_gamma_ = 1.0 / gamma_fn(params.order);
      k.is_difference_ = true;
      k.admissibility_ = {params.order > 0.5, true};
      break;
    case KernelKind::hadamard:
      require_unit_order(params.order, kind);
      k.order_ = params.order;
      k.sigma_ = params.order - 1.0;
      k.inv_gamma_ = 1.0 / gamma_fn(params.order);
      k.is_difference_ = false;
      k.admissibility_ = {params.order > 0.5, false};
      break;
    case KernelKind::variable_order: {
      if (!params.order_fn) {
        throw DomainError("variable_order kernel requires an order function");
      }
      if (!(params.sample_lo < params.sample_hi) || params.sample_count < 2) {
        throw DomainError("variable_order kernel needs a non-empty sample square");
      }
      double min_order = std::numeric_limits<double>::infinity();
      const int n = params.sample_count;
      const double h = (params.sample_hi - params.sample_lo) / (n - 1);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const double x = params.sample_lo + i * h;
          const double t = params.sample_lo + j * h;
          const double v = params.order_fn(x, t);
          if (!(v > 0.0 && v < 1.0)) {
            throw DomainError(
                fmt::format("variable order alpha({}, {}) = {} is outside (0,1)", x, t, v));
          }
          min_order = std::min(min_order, v);
        }
      }
      k.order_ = min_order;
      k.sigma_ = min_order - 1.0;
      k.is_difference_ = false;
      k.admissibility_ = {min_order > 0.5, false};
      k.order_fn_ = std::make_shared<const OrderFunction>(params.order_fn);
      break;
    }
    case KernelKind::exponential:
      if (!std::isfinite(params.coefficient)) {
        throw DomainError("exponential kernel coefficient must be finite");
      }
      k.coefficient_ = params.coefficient;
      k.sigma_ = 0.0;
      k.is_difference_ = true;
      k.admissibility_ = {true, true};
      break;
    case KernelKind::constant_one:
      k.sigma_ = 0.0;
      k.is_difference_ = true;
      k.admissibility_ = {true, true};
      break;
  }
  return k;
}

double Kernel::eval(double x, double t) const {
  switch (kind_) {
    case KernelKind::riemann_liouville: return std::pow(x - t, sigma_) * inv_gamma_;
    case KernelKind::hadamard: return std::pow(std::log1p((x - t) / t), sigma_) * inv_gamma_ / t;
    case KernelKind::variable_order: {
      const double a = (*order_fn_)(x, t);
      if (!(a > 0.0 && a < 1.0)) {
        throw DomainError(
            fmt::format("variable order alpha({}, {}) = {} is outside (0,1)", x, t, a));
      }
      return std::pow(x - t, a - 1.0) / gamma_fn(a);
    }
    case KernelKind::exponential: return std::exp(coefficient_ * (x - t));
    case KernelKind::constant_one: return 1.0;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double Kernel::regularized(double x, double t) const {
  switch (kind_) {
    case KernelKind::riemann_liouville: return inv_gamma_;
    case KernelKind::hadamard: {
      // (x-t)/log(x/t) -> t as t -> x, so the ratio stays bounded.
      const double s = x - t;
      const double ratio = s / std::log1p(s / t);
      return std::pow(ratio, -sigma_) * inv_gamma_ / t;
    }
    case KernelKind::variable_order: return eval(x, t) * std::pow(x - t, -sigma_);
    case KernelKind::exponential:
    case KernelKind::constant_one: return eval(x, t);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double Kernel::eval_with_gap(double x, double t, double gap) const {
  switch (kind_) {
    case KernelKind::riemann_liouville: return std::pow(gap, sigma_) * inv_gamma_;
    case KernelKind::variable_order: {
      const double a = (*order_fn_)(x, t);
      if (!(a > 0.0 && a < 1.0)) {
        throw DomainError(
            fmt::format("variable order alpha({}, {}) = {} is outside (0,1)", x, t, a));
      }
      return std::pow(gap, a - 1.0) / gamma_fn(a);
    }
    case KernelKind::exponential: return std::exp(coefficient_ * gap);
    default: return eval(x, t);
  }
}

Kernel Kernel::with_order(double order) const {
  if (kind_ != KernelKind::riemann_liouville && kind_ != KernelKind::hadamard) {
    throw UsageError(fmt::format("{} kernel has no order family", to_string(kind_)));
  }
  KernelParams params;
  params.order = order;
  return make_kernel(kind_, params);
}

std::string Kernel::describe() const {
  switch (kind_) {
    case KernelKind::exponential: return fmt::format("exponential(c={})", coefficient_);
    case KernelKind::constant_one: return "constant_one";
    case KernelKind::variable_order: return fmt::format("variable_order(min order={})", *order_);
    default: return fmt::format("{}(order={})", to_string(kind_), *order_);
  }
}

Kernel riemann_liouville_kernel(double order) {
  KernelParams p;
  p.order = order;
  return make_kernel(KernelKind::riemann_liouville, p);
}

Kernel hadamard_kernel(double order) {
  KernelParams p;
  p.order = order;
  return make_kernel(KernelKind::hadamard, p);
}

Kernel exponential_kernel(double coefficient) {
  KernelParams p;
  p.coefficient = coefficient;
  return make_kernel(KernelKind::exponential, p);
}

Kernel constant_one_kernel() { return make_kernel(KernelKind::constant_one); }

Kernel variable_order_kernel(OrderFunction fn, double lo, double hi) {
  KernelParams p;
  p.order_fn = std::move(fn);
  p.sample_lo = lo;
  p.sample_hi = hi;
  return make_kernel(KernelKind::variable_order, p);
}

}  // namespace gfvc
