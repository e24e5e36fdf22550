#pragma once

// Shared helpers for residual evaluation: argument bundles along a
// trajectory and vector-valued K-op / Richardson derivative.

#include <fmt/core.h>

#include <span>
#include <vector>

#include "gfvc/detail/branch.hpp"
#include "gfvc/errors.hpp"
#include "gfvc/function_handle.hpp"
#include "gfvc/problem.hpp"

namespace gfvc::detail {

/// Trajectory with derivative callables resolved once.
class BundleEvaluator {
 public:
  BundleEvaluator(const LagrangianSpec& L, const FunctionHandle& y, const QuadratureSpec& inner)
      : L_(L), y_(y), inner_(inner) {
    if (y.dim() != L.N) {
      throw UsageError(
          fmt::format("trajectory has {} components, the lagrangian expects {}", y.dim(), L.N));
    }
    for (std::size_t j = 0; j < L.N; ++j) dy_.push_back(y.derivative_fn(j));
  }

  void fill(double t, std::span<double> z) const {
    const std::size_t N = L_.N;
    for (std::size_t j = 0; j < N; ++j) {
      z[L_.y_index(j)] = y_.value(j, t);
      z[L_.yp_index(j)] = dy_[j](t);
    }
    for (std::size_t i = 0; i < L_.n; ++i) {
      const OperatorTerm& term = L_.beta[i];
      for (std::size_t j = 0; j < N; ++j) {
        z[L_.v_index(i, j)] = detail::k_op_impl(term.kernel, term.pset, dy_[j], t, inner_);
      }
    }
    for (std::size_t k = 0; k < L_.m; ++k) {
      const OperatorTerm& term = L_.gamma[k];
      for (std::size_t j = 0; j < N; ++j) {
        const RealFn& yj = y_.component(j).value;
        z[L_.w_index(k, j)] = detail::k_op_impl(term.kernel, term.pset, yj, t, inner_);
      }
    }
  }

  std::vector<double> bundle(double t) const {
    std::vector<double> z(L_.arg_count());
    fill(t, z);
    return z;
  }

  /// k_alpha(b, s) * grad F(bundle(s)).
  std::vector<double> weighted_gradient(const Integrand& F, double b, double s) const {
    const std::vector<double> z = bundle(s);
    std::vector<double> g(z.size());
    F.gradient(s, z, g);
    const double k = L_.alpha_kernel.eval(b, s);
    for (double& v : g) v = detail::checked(v * k, s);
    return g;
  }

 private:
  const LagrangianSpec& L_;
  const FunctionHandle& y_;
  QuadratureSpec inner_;
  std::vector<RealFn> dy_;
};

/// Sum over the K-op nodes of weight * v(node), with v vector valued.
template <class V>
std::vector<double> vector_k_op(const Kernel& kernel, const ParamSet& P, double x,
                                const QuadratureSpec& spec, std::size_t size, V&& values) {
  std::vector<double> acc(size, 0.0);
  detail::k_op_nodes(kernel, P, x, spec, [&](double t, double w) {
    const std::vector<double> v = values(t);
    for (std::size_t i = 0; i < size; ++i) acc[i] += w * v[i];
  });
  return acc;
}

/// Richardson central difference of a vector-valued function.
template <class G>
std::vector<double> vector_derivative(G&& g, double x, double h) {
  const std::vector<double> p1 = g(x + h), m1 = g(x - h);
  const std::vector<double> p2 = g(x + 0.5 * h), m2 = g(x - 0.5 * h);
  std::vector<double> out(p1.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double d1 = (p1[i] - m1[i]) / (2.0 * h);
    const double d2 = (p2[i] - m2[i]) / h;
    out[i] = (4.0 * d2 - d1) / 3.0;
  }
  return out;
}

}  // namespace gfvc::detail
