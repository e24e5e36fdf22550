#include "gfvc/noether.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gfvc/detail/bundle.hpp"
#include "gfvc/errors.hpp"
#include "gfvc/functional.hpp"
#include "gfvc/operators.hpp"

namespace gfvc {

namespace {

std::vector<double> values_at(const FunctionHandle& y, double t) { return y(t); }

std::vector<double> derivatives_at(const FunctionHandle& y, double t) {
  std::vector<double> d(y.dim());
  for (std::size_t j = 0; j < y.dim(); ++j) d[j] = y.derivative(j, t);
  return d;
}

double weight_at(const Kernel& k, double b, double t) {
  const double w = k.eval(b, t);
  if (w == 0.0 || !std::isfinite(w)) {
    throw NumericalError(fmt::format("weight k(b, t) = {} at t={} cannot divide", w, t));
  }
  return w;
}

}  // namespace

TransformationSpec translation(std::size_t N, std::size_t component) {
  if (component >= N) throw UsageError("translation component out of range");
  TransformationSpec xf;
  xf.xi = [N, component](double, std::span<const double>) {
    std::vector<double> v(N, 0.0);
    v[component] = 1.0;
    return v;
  };
  xf.dxi_dt_along = [N](double, std::span<const double>, std::span<const double>) {
    return std::vector<double>(N, 0.0);
  };
  return xf;
}

TransformationSpec rotation(std::size_t N, std::size_t first, std::size_t second) {
  if (first >= N || second >= N || first == second) {
    throw UsageError("rotation plane components out of range");
  }
  TransformationSpec xf;
  xf.xi = [N, first, second](double, std::span<const double> y) {
    std::vector<double> v(N, 0.0);
    v[first] = y[second];
    v[second] = -y[first];
    return v;
  };
  xf.dxi_dt_along = [N, first, second](double, std::span<const double>,
                                       std::span<const double> yp) {
    std::vector<double> v(N, 0.0);
    v[first] = yp[second];
    v[second] = -yp[first];
    return v;
  };
  return xf;
}

FunctionHandle generator_along(const TransformationSpec& xf, const FunctionHandle& y) {
  if (!xf.xi) throw UsageError("transformation has no generator xi");
  std::vector<ScalarFunction> comps;
  for (std::size_t j = 0; j < y.dim(); ++j) {
    ScalarFunction c;
    c.value = [xf, y, j](double t) { return xf.xi(t, values_at(y, t)).at(j); };
    if (xf.dxi_dt_along) {
      c.derivative = [xf, y, j](double t) {
        return xf.dxi_dt_along(t, values_at(y, t), derivatives_at(y, t)).at(j);
      };
    }
    comps.push_back(std::move(c));
  }
  return FunctionHandle(std::move(comps), y.domain());
}

std::vector<Subinterval> default_subintervals(const Interval& interval, int count,
                                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(interval.a, interval.b);
  std::vector<Subinterval> out;
  while (static_cast<int>(out.size()) < count) {
    double ta = u(rng), tb = u(rng);
    if (ta > tb) std::swap(ta, tb);
    if (tb - ta < 1e-3 * interval.length()) continue;
    out.emplace_back(ta, tb);
  }
  return out;
}

double check_invariance(const ProblemSpec& problem, const TransformationSpec& xf,
                        const FunctionHandle& y, const std::vector<double>& eps_list,
                        const std::vector<Subinterval>& subintervals, const QuadratureSpec& quad) {
  const FunctionHandle xi = generator_along(xf, y);
  double worst = 0.0;
  for (double eps : eps_list) {
    if (eps == 0.0) continue;
    std::vector<ScalarFunction> comps;
    for (std::size_t j = 0; j < y.dim(); ++j) {
      ScalarFunction c;
      c.value = [y, xi, j, eps](double t) { return y.value(j, t) + eps * xi.value(j, t); };
      if (y.has_derivative(j) && xi.has_derivative(j)) {
        c.derivative = [y, xi, j, eps](double t) {
          return y.derivative(j, t) + eps * xi.derivative(j, t);
        };
      }
      comps.push_back(std::move(c));
    }
    const FunctionHandle yhat(std::move(comps), y.domain());
    for (const auto& [ta, tb] : subintervals) {
      const double base = evaluate_functional_on(problem, y, ta, tb, quad);
      const double moved = evaluate_functional_on(problem, yhat, ta, tb, quad);
      worst = std::max(worst, std::abs(moved - base) / std::abs(eps));
    }
  }
  return worst;
}

std::vector<double> nci_residual(const ProblemSpec& problem, const TransformationSpec& xf,
                                 const FunctionHandle& y, const std::vector<double>& t_grid,
                                 const QuadratureSpec& quad) {
  const LagrangianSpec& L = problem.lagrangian;
  const QuadratureSpec inner = quad.halved();
  const detail::BundleEvaluator ev(L, y, inner);
  const FunctionHandle xi = generator_along(xf, y);
  std::vector<double> out(t_grid.size());
  std::vector<double> grad(L.arg_count());
  for (std::size_t g = 0; g < t_grid.size(); ++g) {
    const double t = t_grid[g];
    const std::vector<double> z = ev.bundle(t);
    L.integrand.gradient(t, z, grad);
    double r = 0.0;
    for (std::size_t j = 0; j < L.N; ++j) {
      r += grad[L.y_index(j)] * xi.value(j, t) + grad[L.yp_index(j)] * xi.derivative(j, t);
      const FunctionHandle xj = xi.component_handle(j);
      for (std::size_t i = 0; i < L.n; ++i) {
        const OperatorTerm& term = L.beta[i];
        r += grad[L.v_index(i, j)] * b_op(term.kernel, term.pset, xj, t, inner)[0];
      }
      for (std::size_t k = 0; k < L.m; ++k) {
        const OperatorTerm& term = L.gamma[k];
        r += grad[L.w_index(k, j)] * k_op(term.kernel, term.pset, xj, t, inner)[0];
      }
    }
    out[g] = r;
  }
  return out;
}

double d_operator(const ParamSet& P, const Kernel& kernel_comp, const FunctionHandle& f,
                  const FunctionHandle& g, double t, const Kernel& weight_kernel,
                  const QuadratureSpec& quad) {
  return d_operator(P, kernel_comp, f, g, t, weight_kernel, quad, default_diff_step(P));
}

double d_operator(const ParamSet& P, const Kernel& kernel_comp, const FunctionHandle& f,
                  const FunctionHandle& g, double t, const Kernel& weight_kernel,
                  const QuadratureSpec& quad, double diff_step) {
  const double w = weight_at(weight_kernel, P.b, t);
  const double a_term = a_op(kernel_comp, dual_pset(P), g.component(0).value, t, quad, diff_step);
  const double b_term = b_op(kernel_comp, P, f, t, quad)[0];
  return f.value(0, t) * a_term / w + g.value(0, t) * b_term;
}

double i_operator(const ParamSet& P, const Kernel& kernel, const FunctionHandle& f,
                  const FunctionHandle& g, double t, const Kernel& weight_kernel,
                  const QuadratureSpec& quad) {
  const double w = weight_at(weight_kernel, P.b, t);
  const double dual_term = k_op(kernel, dual_pset(P), g.component(0).value, t, quad);
  const double direct_term = k_op(kernel, P, f.component(0).value, t, quad);
  return -f.value(0, t) * dual_term / w + g.value(0, t) * direct_term;
}

std::vector<double> noether_residual(const ProblemSpec& problem, const TransformationSpec& xf,
                                     const FunctionHandle& y, const std::vector<double>& t_grid,
                                     const QuadratureSpec& quad, NoetherForm form) {
  const LagrangianSpec& L = problem.lagrangian;
  const double a = problem.interval.a;
  const double b = problem.interval.b;
  const double h = (b - a) * 1e-3;
  const std::size_t size = L.arg_count();
  const QuadratureSpec inner = quad.halved();
  const detail::BundleEvaluator ev(L, y, inner);
  const FunctionHandle xi = generator_along(xf, y);
  auto wgrad = [&](double s) { return ev.weighted_gradient(L.integrand, b, s); };
  auto kw = [&](double s) { return L.alpha_kernel.eval(b, s); };
  // xi_j d_{y'_j}F, summed over j
  auto flux = [&](double s) {
    const std::vector<double> g = wgrad(s);
    const double k = kw(s);
    double sum = 0.0;
    for (std::size_t j = 0; j < L.N; ++j) sum += xi.value(j, s) * g[L.yp_index(j)] / k;
    return std::vector<double>{sum};
  };

  std::vector<double> out(t_grid.size());
  for (std::size_t gi = 0; gi < t_grid.size(); ++gi) {
    const double t = t_grid[gi];
    detail::check_stencil(t, a, b, h);
    const double k = weight_at(L.alpha_kernel, b, t);
    const double dk = detail::richardson_derivative(kw, t, h);
    const std::vector<double> here = wgrad(t);  // k * grad F
    // g(t) multiplying B_P[xi] and K_R[xi]: k dF (as printed) or dF
    const double g_scale = form == NoetherForm::as_printed ? 1.0 : 1.0 / k;

    double r = 0.0;
    for (std::size_t i = 0; i < L.n; ++i) {
      const OperatorTerm& term = L.beta[i];
      const ParamSet Pd = dual_pset(term.pset);
      auto G = [&](double x) {
        return detail::vector_k_op(term.kernel, Pd, x, inner, size, wgrad);
      };
      const std::vector<double> A = detail::vector_derivative(G, t, h);
      for (std::size_t j = 0; j < L.N; ++j) {
        const std::size_t idx = L.v_index(i, j);
        const double Bxi = b_op(term.kernel, term.pset, xi.component_handle(j), t, inner)[0];
        r += xi.value(j, t) * A[idx] / k + g_scale * here[idx] * Bxi;
      }
    }
    for (std::size_t kk = 0; kk < L.m; ++kk) {
      const OperatorTerm& term = L.gamma[kk];
      const std::vector<double> Kd =
          detail::vector_k_op(term.kernel, dual_pset(term.pset), t, inner, size, wgrad);
      for (std::size_t j = 0; j < L.N; ++j) {
        const std::size_t idx = L.w_index(kk, j);
        const double Kxi = k_op(term.kernel, term.pset, xi.component(j).value, t, inner);
        r += -xi.value(j, t) * Kd[idx] / k + g_scale * here[idx] * Kxi;
      }
    }
    r += detail::vector_derivative(flux, t, h)[0];
    r += flux(t)[0] * dk / k;
    out[gi] = r;
  }
  return out;
}

std::vector<double> noether_residual(const ProblemSpec& problem, const TransformationSpec& xf,
                                     const Solution& y, const std::vector<double>& t_grid,
                                     const QuadratureSpec& quad, NoetherForm form) {
  return noether_residual(problem, xf, y.evaluator, t_grid, quad, form);
}

double flatness(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  const double n = static_cast<double>(values.size());
  double mean = 0.0, mean_abs = 0.0;
  for (double v : values) {
    mean += v;
    mean_abs += std::abs(v);
  }
  mean /= n;
  mean_abs /= n;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  return std::sqrt(var / n) / std::max(1.0, mean_abs);
}

ConstantOfMotion constant_of_motion(const ProblemSpec& problem, const FunctionHandle& y,
                                    const std::vector<double>& t_grid, OrderMode mode,
                                    const QuadratureSpec& quad) {
  const LagrangianSpec& L = problem.lagrangian;
  if (L.n != 1 || L.m != 0 || L.N != 1) {
    throw UsageError(
        "constant of motion needs a scalar problem with one B-op argument and no K-op argument");
  }
  const OperatorTerm& term = L.beta[0];
  Kernel kernel = term.kernel;
  if (mode == OrderMode::as_printed_alpha) {
    const auto comp_order = term.kernel.order();
    if (!comp_order) {
      throw UsageError(fmt::format("{} kernel has no order to replace", term.kernel.describe()));
    }
    kernel = term.kernel.with_order(1.0 - *comp_order);
  }
  const double b = problem.interval.b;
  const QuadratureSpec inner = quad.halved();
  const detail::BundleEvaluator ev(L, y, inner);
  const std::size_t idx = L.v_index(0, 0);
  const ParamSet Pd = dual_pset(term.pset);

  ConstantOfMotion out;
  out.values.reserve(t_grid.size());
  for (double t : t_grid) {
    out.values.push_back(k_op(
        kernel, Pd, [&](double s) { return ev.weighted_gradient(L.integrand, b, s)[idx]; }, t,
        quad));
  }
  out.flatness = flatness(out.values);
  return out;
}

}  // namespace gfvc
