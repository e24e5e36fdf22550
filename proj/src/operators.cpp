#include "gfvc/operators.hpp"

#include <algorithm>

#include "gfvc/detail/branch.hpp"
#include "gfvc/errors.hpp"

namespace gfvc {

namespace {

void require_scalar(const FunctionHandle& f, const char* name) {
  if (f.dim() != 1) throw UsageError(fmt::format("{} must be scalar", name));
}

}  // namespace

double k_op(const Kernel& kernel, const ParamSet& P, const RealFn& f, double x,
            const QuadratureSpec& quad) {
  return detail::k_op_impl(kernel, P, f, x, quad);
}

std::vector<double> k_op(const Kernel& kernel, const ParamSet& P, const FunctionHandle& f, double x,
                         const QuadratureSpec& quad) {
  std::vector<double> out(f.dim());
  for (std::size_t j = 0; j < f.dim(); ++j) {
    const auto& fn = f.component(j).value;
    out[j] = detail::k_op_impl(kernel, P, fn, x, quad);
  }
  return out;
}

double b_op(const Kernel& kernel_comp, const ParamSet& P, const RealFn& df, double x,
            const QuadratureSpec& quad) {
  return detail::k_op_impl(kernel_comp, P, df, x, quad);
}

BOpResult b_op_detailed(const Kernel& kernel_comp, const ParamSet& P, const FunctionHandle& f,
                        double x, const QuadratureSpec& quad) {
  BOpResult r;
  r.value.resize(f.dim());
  for (std::size_t j = 0; j < f.dim(); ++j) {
    if (!f.has_derivative(j)) r.derivative_fallback = true;
    const RealFn df = f.derivative_fn(j);
    r.value[j] = detail::k_op_impl(kernel_comp, P, df, x, quad);
  }
  return r;
}

std::vector<double> b_op(const Kernel& kernel_comp, const ParamSet& P, const FunctionHandle& f,
                         double x, const QuadratureSpec& quad) {
  return b_op_detailed(kernel_comp, P, f, x, quad).value;
}

double a_op(const Kernel& kernel_comp, const ParamSet& P, const RealFn& f, double x,
            const QuadratureSpec& quad, double diff_step) {
  detail::check_stencil(x, P.a, P.b, diff_step);
  auto g = [&](double s) { return detail::k_op_impl(kernel_comp, P, f, s, quad); };
  return detail::richardson_derivative(g, x, diff_step);
}

std::vector<double> a_op(const Kernel& kernel_comp, const ParamSet& P, const FunctionHandle& f,
                         double x, const QuadratureSpec& quad, double diff_step) {
  std::vector<double> out(f.dim());
  for (std::size_t j = 0; j < f.dim(); ++j) {
    out[j] = a_op(kernel_comp, P, f.component(j).value, x, quad, diff_step);
  }
  return out;
}

IbpCheck check_ibp_k(const Kernel& kernel, const ParamSet& P, const FunctionHandle& f,
                     const FunctionHandle& g, const QuadratureSpec& quad) {
  require_scalar(f, "f");
  require_scalar(g, "g");
  P.validate();
  const RealFn& fv = f.component(0).value;
  const RealFn& gv = g.component(0).value;
  const ParamSet Pd = dual_pset(P);

  IbpCheck r;
  r.lhs = integrate([&](double x) { return gv(x) * detail::k_op_impl(kernel, P, fv, x, quad); },
                    P.a, P.b, quad);
  r.rhs = integrate([&](double x) { return fv(x) * detail::k_op_impl(kernel, Pd, gv, x, quad); },
                    P.a, P.b, quad);
  r.abs_residual = std::abs(r.lhs - r.rhs);
  return r;
}

IbpCheck check_ibp_b(const Kernel& kernel_comp, const ParamSet& P, const FunctionHandle& f,
                     const FunctionHandle& g, const QuadratureSpec& quad, double diff_step) {
  require_scalar(f, "f");
  require_scalar(g, "g");
  P.validate();
  const RealFn& fv = f.component(0).value;
  const RealFn df = f.derivative_fn(0);
  const RealFn& gv = g.component(0).value;
  const ParamSet Pd = dual_pset(P);
  auto G = [&](double x) { return detail::k_op_impl(kernel_comp, Pd, gv, x, quad); };

  IbpCheck r;
  r.lhs =
      integrate([&](double x) { return gv(x) * detail::k_op_impl(kernel_comp, P, df, x, quad); },
                P.a, P.b, quad);

  const double boundary = fv(P.b) * G(P.b) - fv(P.a) * G(P.a);

  const double cell = std::min(20.0 * diff_step, 0.25 * (P.b - P.a));
  const double lo = P.a + cell;
  const double hi = P.b - cell;
  const double interior =
      integrate([&](double x) { return fv(x) * a_op(kernel_comp, Pd, gv, x, quad, diff_step); }, lo,
                hi, quad);
  const double left_cell = fv(lo) * G(lo) - fv(P.a) * G(P.a) -
                           integrate([&](double x) { return df(x) * G(x); }, P.a, lo, quad);
  const double right_cell = fv(P.b) * G(P.b) - fv(hi) * G(hi) -
                            integrate([&](double x) { return df(x) * G(x); }, hi, P.b, quad);
  const double a_term = interior + left_cell + right_cell;

  r.rhs = boundary - a_term;
  r.abs_residual = std::abs(r.lhs - r.rhs);
  return r;
}

IbpCheck check_ibp_b(const Kernel& kernel_comp, const ParamSet& P, const FunctionHandle& f,
                     const FunctionHandle& g, const QuadratureSpec& quad) {
  return check_ibp_b(kernel_comp, P, f, g, quad, default_diff_step(P));
}

}  // namespace gfvc
