#include "gfvc/functional.hpp"

#include <fmt/core.h>

#include <cmath>
#include <numbers>

#include "gfvc/detail/branch.hpp"
#include "gfvc/detail/bundle.hpp"
#include "gfvc/errors.hpp"
#include "gfvc/operators.hpp"

namespace gfvc {

namespace {

double functional_impl(const ProblemSpec& problem, const Integrand& F, const FunctionHandle& y,
                       double ta, double tb, const QuadratureSpec& quad) {
  const LagrangianSpec& L = problem.lagrangian;
  const detail::BundleEvaluator ev(L, y, quad.halved());
  std::vector<double> z(L.arg_count());
  double total = 0.0;
  detail::k_op_nodes(L.alpha_kernel, ParamSet{ta, tb, 1.0, 0.0}, tb, quad, [&](double t, double w) {
    ev.fill(t, z);
    const double f = F.value(t, z);
    if (!std::isfinite(f)) {
      throw NumericalError(fmt::format("non-finite integrand F={} at t={}", f, t));
    }
    total += w * f;
  });
  return total;
}

}  // namespace

std::vector<double> bundle_at(const LagrangianSpec& lagrangian, const FunctionHandle& y, double t,
                              const QuadratureSpec& inner) {
  return detail::BundleEvaluator(lagrangian, y, inner).bundle(t);
}

double evaluate_functional(const ProblemSpec& problem, const FunctionHandle& y,
                           const QuadratureSpec& quad) {
  return functional_impl(problem, problem.lagrangian.integrand, y, problem.interval.a,
                         problem.interval.b, quad);
}

double evaluate_functional_on(const ProblemSpec& problem, const FunctionHandle& y, double ta,
                              double tb, const QuadratureSpec& quad) {
  const Interval& I = problem.interval;
  if (!(I.a <= ta && ta < tb && tb <= I.b)) {
    throw DomainError(fmt::format("subinterval [{}, {}] is not inside [{}, {}]", ta, tb, I.a, I.b));
  }
  return functional_impl(problem, problem.lagrangian.integrand, y, ta, tb, quad);
}

double evaluate_constraint(const ProblemSpec& problem, const FunctionHandle& y,
                           const QuadratureSpec& quad) {
  if (!problem.isoperimetric) throw UsageError("problem has no isoperimetric constraint");
  return functional_impl(problem, problem.isoperimetric->G, y, problem.interval.a,
                         problem.interval.b, quad);
}

std::vector<double> default_residual_grid(const Interval& interval, double diff_step) {
  constexpr int count = 32;
  const double lo = interval.a + 2.0 * diff_step;
  const double hi = interval.b - 2.0 * diff_step;
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i) {
    // increasing Chebyshev points of the first kind
    const double c = -std::cos((2.0 * i + 1.0) * std::numbers::pi / (2.0 * count));
    grid[i] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * c;
  }
  return grid;
}

std::vector<double> default_residual_grid(const ProblemSpec& problem) {
  const Interval& I = problem.interval;
  return default_residual_grid(I, (I.b - I.a) * 1e-3);
}

Residual el_residual(const ProblemSpec& problem, const FunctionHandle& y,
                     const std::vector<double>& t_grid, const QuadratureSpec& quad) {
  const Interval& I = problem.interval;
  return el_residual(problem, y, t_grid, quad, (I.b - I.a) * 1e-3);
}

Residual el_residual(const ProblemSpec& problem, const FunctionHandle& y,
                     const std::vector<double>& t_grid, const QuadratureSpec& quad,
                     double diff_step) {
  const LagrangianSpec& L = problem.lagrangian;
  const Integrand& F = L.integrand;
  const double a = problem.interval.a;
  const double b = problem.interval.b;
  const std::size_t N = L.N;
  const std::size_t size = L.arg_count();
  const QuadratureSpec inner = quad.halved();
  const detail::BundleEvaluator ev(L, y, inner);
  auto wgrad = [&](double s) { return ev.weighted_gradient(F, b, s); };

  Residual out(N, std::vector<double>(t_grid.size(), 0.0));
  for (std::size_t g = 0; g < t_grid.size(); ++g) {
    const double t = t_grid[g];
    detail::check_stencil(t, a, b, diff_step);

    const std::vector<double> here = wgrad(t);
    std::vector<double> r(N);
    for (std::size_t j = 0; j < N; ++j) r[j] = here[L.y_index(j)];

    for (std::size_t i = 0; i < L.n; ++i) {
      const OperatorTerm& term = L.beta[i];
      const ParamSet Pd = dual_pset(term.pset);
      auto G = [&](double x) {
        return detail::vector_k_op(term.kernel, Pd, x, inner, size, wgrad);
      };
      const std::vector<double> A = detail::vector_derivative(G, t, diff_step);
      for (std::size_t j = 0; j < N; ++j) r[j] -= A[L.v_index(i, j)];
    }
    for (std::size_t k = 0; k < L.m; ++k) {
      const OperatorTerm& term = L.gamma[k];
      const std::vector<double> K =
          detail::vector_k_op(term.kernel, dual_pset(term.pset), t, inner, size, wgrad);
      for (std::size_t j = 0; j < N; ++j) r[j] += K[L.w_index(k, j)];
    }
    const std::vector<double> dmom = detail::vector_derivative(wgrad, t, diff_step);
    for (std::size_t j = 0; j < N; ++j) {
      r[j] -= dmom[L.yp_index(j)];
      out[j][g] = r[j];
    }
  }
  return out;
}

double residual_l2(const Residual& r) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& row : r) {
    for (double v : row) {
      sum += v * v;
      ++count;
    }
  }
  return count == 0 ? 0.0 : std::sqrt(sum / static_cast<double>(count));
}

double residual_max(const Residual& r) {
  double m = 0.0;
  for (const auto& row : r) {
    for (double v : row) m = std::max(m, std::abs(v));
  }
  return m;
}

std::vector<double> natural_bc_residual(const ProblemSpec& problem, const FunctionHandle& y,
                                        const QuadratureSpec& quad) {
  if (problem.boundary_mode != BoundaryMode::free_left) {
    throw UsageError("natural boundary residual applies to free_left problems only");
  }
  const LagrangianSpec& L = problem.lagrangian;
  const double a = problem.interval.a;
  const double b = problem.interval.b;
  const QuadratureSpec inner = quad.halved();
  const detail::BundleEvaluator ev(L, y, inner);
  auto wgrad = [&](double s) { return ev.weighted_gradient(L.integrand, b, s); };

  const std::vector<double> at_a = wgrad(a);
  std::vector<double> r(L.N);
  for (std::size_t j = 0; j < L.N; ++j) r[j] = at_a[L.yp_index(j)];
  for (std::size_t i = 0; i < L.n; ++i) {
    const OperatorTerm& term = L.beta[i];
    const std::vector<double> K =
        detail::vector_k_op(term.kernel, dual_pset(term.pset), a, inner, L.arg_count(), wgrad);
    for (std::size_t j = 0; j < L.N; ++j) r[j] += K[L.v_index(i, j)];
  }
  return r;
}

}  // namespace gfvc
