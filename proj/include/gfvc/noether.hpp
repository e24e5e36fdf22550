#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "gfvc/function_handle.hpp"
#include "gfvc/problem.hpp"
#include "gfvc/quadrature.hpp"
#include "gfvc/ritz.hpp"

namespace gfvc {

/// Generators of the family y -> y + eps xi(t, y).
struct TransformationSpec {
  std::function<std::vector<double>(double t, std::span<const double> y)> xi;
  /// d/dt xi(t, y(t)) along a trajectory; finite differences when empty.
  std::function<std::vector<double>(double t, std::span<const double> y,
                                    std::span<const double> yp)>
      dxi_dt_along;
};

/// xi = e_component (translation of one coordinate); dxi/dt = 0.
TransformationSpec translation(std::size_t N, std::size_t component);
/// Rotation in the (first, second) plane: xi_first = y_second, xi_second = -y_first.
TransformationSpec rotation(std::size_t N, std::size_t first, std::size_t second);

/// t -> xi(t, y(t)) as a trajectory of the same dimension as y.
FunctionHandle generator_along(const TransformationSpec& xf, const FunctionHandle& y);

using Subinterval = std::pair<double, double>;

/// `count` random subintervals of `interval` drawn with `seed`.
std::vector<Subinterval> default_subintervals(const Interval& interval, int count = 8,
                                              std::uint64_t seed = 0);
inline std::vector<double> default_eps_list() { return {1e-2, 1e-3, 1e-4}; }

/// max over eps and subintervals of |J_sub(y + eps xi) - J_sub(y)| / |eps|,
/// where J_sub is the functional on [ta, tb] with weight k_alpha(tb, t).
/// Entries with eps = 0 contribute 0.
double check_invariance(const ProblemSpec& problem, const TransformationSpec& xf,
                        const FunctionHandle& y, const std::vector<double>& eps_list,
                        const std::vector<Subinterval>& subintervals,
                        const QuadratureSpec& quad = {});

/// Necessary condition of invariance:
///   sum_j d_{y_j}F xi_j + d_{y'_j}F dxi_j/dt + sum_i d_{v_i,j}F B_{P_i}[xi_j]
///         + sum_k d_{w_k,j}F K_{R_k}[xi_j].
std::vector<double> nci_residual(const ProblemSpec& problem, const TransformationSpec& xf,
                                 const FunctionHandle& y, const std::vector<double>& t_grid,
                                 const QuadratureSpec& quad = {});

/// D_P[f,g](t) = f(t) A_{P*}[g](t) / k(b,t) + g(t) B_P[f](t), both operators
/// with the complementary kernel. Throws NumericalError if k(b,t) = 0.
double d_operator(const ParamSet& P, const Kernel& kernel_comp, const FunctionHandle& f,
                  const FunctionHandle& g, double t, const Kernel& weight_kernel,
                  const QuadratureSpec& quad = {});
double d_operator(const ParamSet& P, const Kernel& kernel_comp, const FunctionHandle& f,
                  const FunctionHandle& g, double t, const Kernel& weight_kernel,
                  const QuadratureSpec& quad, double diff_step);

/// I_P[f,g](t) = -f(t) K_{P*}[g](t) / k(b,t) + g(t) K_P[f](t).
double i_operator(const ParamSet& P, const Kernel& kernel, const FunctionHandle& f,
                  const FunctionHandle& g, double t, const Kernel& weight_kernel,
                  const QuadratureSpec& quad = {});

/// How the operator terms of the Noether identity are weighted.
///
/// as_printed: sum_i D[xi, k d_vF] + sum_k I[xi, k d_wF] + d/dt(xi d_{y'}F)
///             + xi d_{y'}F k'/k, with D and I exactly as defined above.
/// consistent: the g(t) B_P and g(t) K_R terms use g/k = d_vF, d_wF, i.e.
///             xi A_{P*}[k d_vF]/k + d_vF B_P[xi] and -xi K_{R*}[k d_wF]/k + d_wF K_R[xi].
///             This equals NCI - sum_j xi_j EL_j / k for every trajectory.
/// The two coincide when k is constant 1 or n = m = 0.
enum class NoetherForm { consistent, as_printed };

std::vector<double> noether_residual(const ProblemSpec& problem, const TransformationSpec& xf,
                                     const FunctionHandle& y, const std::vector<double>& t_grid,
                                     const QuadratureSpec& quad = {},
                                     NoetherForm form = NoetherForm::consistent);
std::vector<double> noether_residual(const ProblemSpec& problem, const TransformationSpec& xf,
                                     const Solution& y, const std::vector<double>& t_grid,
                                     const QuadratureSpec& quad = {},
                                     NoetherForm form = NoetherForm::consistent);

enum class OrderMode { as_printed_alpha, derived_one_minus_alpha };

struct ConstantOfMotion {
  std::vector<double> values;
  double flatness = 0.0;
};

/// stddev(values) / max(1, mean |values|).
double flatness(const std::vector<double>& values);

/// K_{P*}[tau -> k(b,tau) d_vF(bundle(tau))](t) for a problem with one
/// B-op argument (n = 1, m = 0, N = 1). derived_one_minus_alpha uses the
/// complementary kernel of the B-op term, as_printed_alpha the same family at
/// order alpha. Throws UsageError for other problem shapes.
ConstantOfMotion constant_of_motion(const ProblemSpec& problem, const FunctionHandle& y,
                                    const std::vector<double>& t_grid, OrderMode mode,
                                    const QuadratureSpec& quad = {});

}  // namespace gfvc
