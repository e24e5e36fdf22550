#pragma once

#include <vector>

#include "gfvc/function_handle.hpp"
#include "gfvc/problem.hpp"
#include "gfvc/quadrature.hpp"

namespace gfvc {

/// Residual values indexed [component j][grid point].
using Residual = std::vector<std::vector<double>>;

/// Argument bundle z(t) = (y, y', B_{P_i}[y], K_{R_k}[y]) in the flat layout of
/// LagrangianSpec, with inner operators evaluated by `inner`.
std::vector<double> bundle_at(const LagrangianSpec& lagrangian, const FunctionHandle& y, double t,
                              const QuadratureSpec& inner);

/// J(y) = K_{<a,b,1,0>}[F(bundle)](b) = int_a^b k_alpha(b,t) F(bundle(t)) dt.
/// Inner operators use quad.halved(). Throws NumericalError naming t if a
/// sample of F is not finite.
double evaluate_functional(const ProblemSpec& problem, const FunctionHandle& y,
                           const QuadratureSpec& quad);

/// int_{ta}^{tb} k_alpha(tb,t) F(bundle(t)) dt for a subinterval; inner
/// operators keep the problem's parameter sets.
double evaluate_functional_on(const ProblemSpec& problem, const FunctionHandle& y, double ta,
                              double tb, const QuadratureSpec& quad);

/// Constraint functional I(y) (same form with G). Throws UsageError when the
/// problem has no isoperimetric constraint.
double evaluate_constraint(const ProblemSpec& problem, const FunctionHandle& y,
                           const QuadratureSpec& quad);

/// 32 Chebyshev points mapped into [a + 2h, b - 2h].
std::vector<double> default_residual_grid(const Interval& interval, double diff_step);
std::vector<double> default_residual_grid(const ProblemSpec& problem);

/// Euler-Lagrange residual at each grid point:
///   k(b,t) d_{y_j}F - sum_i A_{P_i*}[k d_{v_i,j}F] + sum_k K_{R_k*}[k d_{w_k,j}F]
///   - d/dt(d_{y'_j}F k(b,t)),
/// with k = k_alpha. A-op and d/dt use the Richardson stencil with step
/// diff_step (default (b-a)*1e-3); throws DomainError when the stencil leaves
/// [a, b].
Residual el_residual(const ProblemSpec& problem, const FunctionHandle& y,
                     const std::vector<double>& t_grid, const QuadratureSpec& quad);
Residual el_residual(const ProblemSpec& problem, const FunctionHandle& y,
                     const std::vector<double>& t_grid, const QuadratureSpec& quad,
                     double diff_step);

/// Root mean square over all entries.
double residual_l2(const Residual& r);
/// Maximum absolute entry.
double residual_max(const Residual& r);

/// d_{y'_j}F(a) k(b,a) + sum_i K_{P_i*}(comp)[d_{v_i,j}F k(b,.)](a).
/// Throws UsageError for fixed_both problems.
std::vector<double> natural_bc_residual(const ProblemSpec& problem, const FunctionHandle& y,
                                        const QuadratureSpec& quad);

}  // namespace gfvc
