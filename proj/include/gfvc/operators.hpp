#pragma once

#include <vector>

#include "gfvc/function_handle.hpp"
#include "gfvc/kernel.hpp"
#include "gfvc/param_set.hpp"
#include "gfvc/quadrature.hpp"

namespace gfvc {

/// Default step of the A-op differentiation stencil: (b - a) * 1e-3.
inline double default_diff_step(const ParamSet& P) { return (P.b - P.a) * 1e-3; }

/// Generalized fractional integral
///   K_P[f](x) = p int_a^x k(x,t) f(t) dt + q int_x^b k(t,x) f(t) dt.
/// Throws DomainError for x outside [a, b], NumericalError if a sample of the
/// integrand is not finite.
double k_op(const Kernel& kernel, const ParamSet& P, const RealFn& f, double x,
            const QuadratureSpec& quad);
std::vector<double> k_op(const Kernel& kernel, const ParamSet& P, const FunctionHandle& f, double x,
                         const QuadratureSpec& quad);

/// Generalized Caputo derivative B_P = K_P(comp) o D. `kernel_comp` is the
/// complementary-order kernel h_{1-beta}. The scalar form takes f' directly.
double b_op(const Kernel& kernel_comp, const ParamSet& P, const RealFn& df, double x,
            const QuadratureSpec& quad);
std::vector<double> b_op(const Kernel& kernel_comp, const ParamSet& P, const FunctionHandle& f,
                         double x, const QuadratureSpec& quad);

struct BOpResult {
  std::vector<double> value;
  /// True when some component had no analytic derivative.
  bool derivative_fallback = false;
};
BOpResult b_op_detailed(const Kernel& kernel_comp, const ParamSet& P, const FunctionHandle& f,
                        double x, const QuadratureSpec& quad);

/// Generalized Riemann-Liouville derivative A_P = D o K_P(comp), by a
/// Richardson-extrapolated central difference with steps {h, h/2}.
/// Requires [x - h, x + h] inside [a, b].
double a_op(const Kernel& kernel_comp, const ParamSet& P, const RealFn& f, double x,
            const QuadratureSpec& quad, double diff_step);
std::vector<double> a_op(const Kernel& kernel_comp, const ParamSet& P, const FunctionHandle& f,
                         double x, const QuadratureSpec& quad, double diff_step);

struct IbpCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_residual = 0.0;
};

/// int g K_P[f] dx  versus  int f K_{P*}[g] dx.
IbpCheck check_ibp_k(const Kernel& kernel, const ParamSet& P, const FunctionHandle& f,
                     const FunctionHandle& g, const QuadratureSpec& quad);

/// int g B_P[f] dx  versus  f K_{P*}(comp)[g] |_a^b - int f A_{P*}[g] dx.
///
/// The A-op term is integrated with the differentiation stencil on
/// [a + d, b - d], d = 20 * diff_step; on the two end cells, where the
/// stencil does not fit, int f G' is rewritten as [f G] - int f' G with
/// G = K_{P*}(comp)[g].
IbpCheck check_ibp_b(const Kernel& kernel_comp, const ParamSet& P, const FunctionHandle& f,
                     const FunctionHandle& g, const QuadratureSpec& quad, double diff_step);
IbpCheck check_ibp_b(const Kernel& kernel_comp, const ParamSet& P, const FunctionHandle& f,
                     const FunctionHandle& g, const QuadratureSpec& quad);

}  // namespace gfvc
