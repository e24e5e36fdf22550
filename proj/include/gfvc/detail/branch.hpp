#pragma once

// Template core of the K-op so nested callers (functional, residuals) can
// pass lambdas without std::function indirection.

#include <fmt/core.h>

#include <algorithm>
#include <cmath>

#include "gfvc/errors.hpp"
#include "gfvc/kernel.hpp"
#include "gfvc/param_set.hpp"
#include "gfvc/quadrature.hpp"

namespace gfvc::detail {

enum class Side { left, right };

inline double checked(double v, double t) {
  if (!std::isfinite(v)) {
    throw NumericalError(fmt::format("non-finite integrand sample {} at node t={}", v, t));
  }
  return v;
}

/// Geometric levels needed so the unresolved first panel of a variable-order
/// branch contributes below ~1e-15 relative.
inline int geometric_levels(double sigma_min, double ratio) {
  const double e = 1.0 + sigma_min;
  const int levels = static_cast<int>(std::ceil(std::log(1e-15) / (e * std::log(ratio))));
  return std::clamp(levels, 4, 80);
}

/// Visits the nodes of one K-op branch as visit(t, weight), the weight
/// already including the kernel factor. Left branch: int_{x-reach}^x k(x,t) dt,
/// right branch: int_x^{x+reach} k(t,x) dt.
template <class V>
void branch_nodes(const Kernel& kernel, double x, double reach, Side side,
                  const QuadratureSpec& spec, V&& visit) {
  if (reach <= 0.0) return;
  const double dir = side == Side::left ? -1.0 : 1.0;
  const double sigma = kernel.singularity_exponent();

  if (kernel.has_variable_order()) {
    constexpr double ratio = 0.2;
    for_each_node_geometric(
        0.0, reach, ratio, geometric_levels(sigma, ratio), spec, [&](double s, double w) {
          const double t = x + dir * s;
          const double k =
              side == Side::left ? kernel.eval_with_gap(x, t, s) : kernel.eval_with_gap(t, x, s);
          visit(t, w * k);
        });
    return;
  }

  if (kernel.is_singular()) {
    // u = s^(sigma+1) removes the diagonal singularity: ds = s^-sigma du/(sigma+1).
    const double e = sigma + 1.0;
    const double inv_e = 1.0 / e;
    for_each_node(0.0, std::pow(reach, e), spec, [&](double u, double w) {
      const double t = x + dir * std::pow(u, inv_e);
      const double k = side == Side::left ? kernel.regularized(x, t) : kernel.regularized(t, x);
      visit(t, w * k * inv_e);
    });
    return;
  }

  for_each_node(0.0, reach, spec, [&](double s, double w) {
    const double t = x + dir * s;
    const double k = side == Side::left ? kernel.eval(x, t) : kernel.eval(t, x);
    visit(t, w * k);
  });
}

template <class F>
double branch_integral(const Kernel& kernel, double x, double reach, Side side, F&& f,
                       const QuadratureSpec& spec) {
  double total = 0.0;
  branch_nodes(kernel, x, reach, side, spec,
               [&](double t, double w) { total += checked(w * f(t), t); });
  return total;
}

inline void check_k_op_args(const Kernel& kernel, const ParamSet& P, double x) {
  if (!(x >= P.a && x <= P.b)) {
    throw DomainError(fmt::format("evaluation point x={} outside [{}, {}]", x, P.a, P.b));
  }
  if (kernel.kind() == KernelKind::hadamard && !(P.a > 0.0)) {
    throw DomainError("hadamard kernel requires a > 0");
  }
}

/// Nodes and kernel-weighted quadrature weights of K_P[.](x):
/// K_P[f](x) = sum_i weight_i f(t_i).
template <class V>
void k_op_nodes(const Kernel& kernel, const ParamSet& P, double x, const QuadratureSpec& spec,
                V&& visit) {
  check_k_op_args(kernel, P, x);
  if (P.p != 0.0) {
    branch_nodes(kernel, x, x - P.a, Side::left, spec,
                 [&](double t, double w) { visit(t, P.p * w); });
  }
  if (P.q != 0.0) {
    branch_nodes(kernel, x, P.b - x, Side::right, spec,
                 [&](double t, double w) { visit(t, P.q * w); });
  }
}

template <class F>
double k_op_impl(const Kernel& kernel, const ParamSet& P, F&& f, double x,
                 const QuadratureSpec& spec) {
  check_k_op_args(kernel, P, x);
  double out = 0.0;
  if (P.p != 0.0) out += P.p * branch_integral(kernel, x, x - P.a, Side::left, f, spec);
  if (P.q != 0.0) out += P.q * branch_integral(kernel, x, P.b - x, Side::right, f, spec);
  return out;
}

/// Central difference with one Richardson step over {h, h/2}.
template <class G>
double richardson_derivative(G&& g, double x, double h) {
  const double d1 = (g(x + h) - g(x - h)) / (2.0 * h);
  const double h2 = 0.5 * h;
  const double d2 = (g(x + h2) - g(x - h2)) / (2.0 * h2);
  return (4.0 * d2 - d1) / 3.0;
}

inline void check_stencil(double x, double lo, double hi, double h) {
  if (!(h > 0.0)) throw DomainError("differentiation step must be positive");
  if (x - h < lo || x + h > hi) {
    throw DomainError(
        fmt::format("x={} is too close to an endpoint of [{}, {}] for the differentiation stencil "
                    "(step {}); use a smaller diff_step or an interior x",
                    x, lo, hi, h));
  }
}

}  // namespace gfvc::detail
