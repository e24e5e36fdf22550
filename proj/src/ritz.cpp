#include "gfvc/ritz.hpp"

#include <fmt/core.h>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "gfvc/detail/branch.hpp"
#include "gfvc/errors.hpp"
#include "gfvc/functional.hpp"
#include "gfvc/optimize.hpp"

namespace gfvc {

namespace {

struct Value3 {
  double v = 0.0, d1 = 0.0, d2 = 0.0;
};

/// Legendre P_0..P_nmax and their derivatives at s.
void legendre_all(int nmax, double s, std::vector<double>& P, std::vector<double>& dP) {
  P.assign(nmax + 1, 0.0);
  dP.assign(nmax + 1, 0.0);
  P[0] = 1.0;
  if (nmax >= 1) {
    P[1] = s;
    dP[1] = 1.0;
  }
  for (int k = 1; k < nmax; ++k) {
    P[k + 1] = ((2.0 * k + 1.0) * s * P[k] - k * P[k - 1]) / (k + 1.0);
    dP[k + 1] = dP[k - 1] + (2.0 * k + 1.0) * P[k];
  }
}

/// Scalar trial functions shared by all components.
class TrialSpace {
 public:
  TrialSpace(RitzBasis basis, BoundaryMode mode, int M, Interval I)
      : basis_(basis), mode_(mode), M_(M), I_(I) {
    if (M < 1) throw UsageError("Ritz basis size M must be at least 1");
  }

  std::size_t size() const { return ritz_function_count(basis_, mode_, M_); }

  /// Values of all trial functions at t.
  std::vector<Value3> eval(double t) const {
    const double L = I_.length();
    const double tau = (t - I_.a) / L;
    std::vector<Value3> out(size());
    if (basis_ == RitzBasis::sine) {
      for (int l = 1; l <= M_; ++l) {
        const double w = l * std::numbers::pi / L;
        const double arg = l * std::numbers::pi * tau;
        out[l - 1] = {std::sin(arg), w * std::cos(arg), -w * w * std::sin(arg)};
      }
      if (mode_ == BoundaryMode::free_left) {
        for (int l = 1; l <= M_; ++l) {
          const double w = (l - 0.5) * std::numbers::pi / L;
          const double arg = (l - 0.5) * std::numbers::pi * tau;
          out[M_ + l - 1] = {std::cos(arg), -w * std::sin(arg), -w * w * std::cos(arg)};
        }
      }
      return out;
    }
    const double s = 2.0 * tau - 1.0;
    std::vector<double> P, dP;
    legendre_all(M_ + 1, s, P, dP);
    for (int l = 1; l <= M_; ++l) {
      if (mode_ == BoundaryMode::fixed_both) {
        const double c = std::sqrt((2.0 * l + 1.0) / L);
        out[l - 1] = {c * 0.5 * L * (P[l + 1] - P[l - 1]) / (2.0 * l + 1.0), c * P[l],
                      c * dP[l] * 2.0 / L};
      } else {
        const int k = l - 1;
        const double c = std::sqrt((2.0 * k + 1.0) / L);
        const double tail = k == 0 ? 1.0 - s : -(P[k + 1] - P[k - 1]) / (2.0 * k + 1.0);
        out[l - 1] = {-c * 0.5 * L * tail, c * P[k], c * dP[k] * 2.0 / L};
      }
    }
    return out;
  }

 private:
  RitzBasis basis_;
  BoundaryMode mode_;
  int M_;
  Interval I_;
};

/// Boundary lift of component j: linear interpolant (fixed_both) or y_b.
struct Lift {
  double value0 = 0.0;  // value at a
  double slope = 0.0;
  double a = 0.0;
  double operator()(double t) const { return value0 + slope * (t - a); }
};

std::vector<Lift> make_lifts(const ProblemSpec& problem) {
  const Interval& I = problem.interval;
  std::vector<Lift> lifts(problem.lagrangian.N);
  for (std::size_t j = 0; j < lifts.size(); ++j) {
    lifts[j].a = I.a;
    if (problem.boundary_mode == BoundaryMode::fixed_both) {
      const double ya = (*problem.y_a)[j];
      lifts[j].value0 = ya;
      lifts[j].slope = (problem.y_b[j] - ya) / I.length();
    } else {
      lifts[j].value0 = problem.y_b[j];
    }
  }
  return lifts;
}

/// Outer quadrature nodes with every operator argument of the trial functions
/// tabulated, so the functional of a coefficient vector is a plain sum.
/// Operator blocks per scalar function: 0 value, 1 derivative, 2+i B_i, 2+n+k K_k.
class Discretization {
 public:
  Discretization(const ProblemSpec& problem, const TrialSpace& space, const QuadratureSpec& quad)
      : L_(problem.lagrangian), lifts_(make_lifts(problem)), nf_(space.size()) {
    blocks_ = 2 + L_.n + L_.m;
    const double b = problem.interval.b;
    const QuadratureSpec inner = quad.halved();
    detail::k_op_nodes(L_.alpha_kernel, problem.functional_pset(), b, quad,
                       [&](double t, double w) {
                         nodes_.push_back(t);
                         weights_.push_back(w);
                       });
    // scalar functions: the nf trial functions, then 1 and (t - a) for the lifts
    const std::size_t total = nf_ + 2;
    const double a = problem.interval.a;
    table_.assign(nodes_.size() * total * blocks_, 0.0);
    for (std::size_t q = 0; q < nodes_.size(); ++q) {
      const double t = nodes_[q];
      const std::vector<Value3> here = space.eval(t);
      for (std::size_t f = 0; f < nf_; ++f) {
        at(q, f, 0) = here[f].v;
        at(q, f, 1) = here[f].d1;
      }
      at(q, nf_, 0) = 1.0;
      at(q, nf_ + 1, 0) = t - a;
      at(q, nf_ + 1, 1) = 1.0;
      // operator values: one pass over the inner nodes covers all functions
      for (std::size_t i = 0; i < L_.n; ++i) {
        const OperatorTerm& term = L_.beta[i];
        accumulate(term, t, inner, q, 2 + i, total, [&](double s, std::vector<double>& out) {
          const std::vector<Value3> vals = space.eval(s);
          for (std::size_t f = 0; f < nf_; ++f) out[f] = vals[f].d1;
          out[nf_] = 0.0;
          out[nf_ + 1] = 1.0;
        });
      }
      for (std::size_t k = 0; k < L_.m; ++k) {
        const OperatorTerm& term = L_.gamma[k];
        accumulate(term, t, inner, q, 2 + L_.n + k, total, [&](double s, std::vector<double>& out) {
          const std::vector<Value3> vals = space.eval(s);
          for (std::size_t f = 0; f < nf_; ++f) out[f] = vals[f].v;
          out[nf_] = 1.0;
          out[nf_ + 1] = s - a;
        });
      }
    }
  }

  /// sum_q w_q F(t_q, z_q(c)).
  double functional(const Integrand& F, std::span<const double> c) const {
    const std::size_t N = L_.N;
    std::vector<double> z(L_.arg_count());
    double total = 0.0;
    for (std::size_t q = 0; q < nodes_.size(); ++q) {
      for (std::size_t j = 0; j < N; ++j) {
        const Lift& lift = lifts_[j];
        const double* cj = c.data() + j * nf_;
        for (std::size_t blk = 0; blk < blocks_; ++blk) {
          double v = lift.value0 * at(q, nf_, blk) + lift.slope * at(q, nf_ + 1, blk);
          for (std::size_t f = 0; f < nf_; ++f) v += cj[f] * at(q, f, blk);
          z[blk * N + j] = v;
        }
      }
      total += weights_[q] * F.value(nodes_[q], z);
    }
    return total;
  }

 private:
  double& at(std::size_t q, std::size_t f, std::size_t blk) {
    return table_[(q * (nf_ + 2) + f) * blocks_ + blk];
  }
  double at(std::size_t q, std::size_t f, std::size_t blk) const {
    return table_[(q * (nf_ + 2) + f) * blocks_ + blk];
  }

  template <class Fill>
  void accumulate(const OperatorTerm& term, double t, const QuadratureSpec& inner, std::size_t q,
                  std::size_t blk, std::size_t total, Fill&& fill) {
    std::vector<double> vals(total);
    std::vector<double> acc(total, 0.0);
    detail::k_op_nodes(term.kernel, term.pset, t, inner, [&](double s, double w) {
      fill(s, vals);
      for (std::size_t f = 0; f < total; ++f) acc[f] += w * vals[f];
    });
    for (std::size_t f = 0; f < total; ++f) at(q, f, blk) = acc[f];
  }

  const LagrangianSpec& L_;
  std::vector<Lift> lifts_;
  std::size_t nf_;
  std::size_t blocks_ = 2;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> table_;
};

MinimizeOptions minimize_options(const RitzOptions& opts) {
  return MinimizeOptions{opts.max_iters, opts.grad_step, opts.tol};
}

Solution finish(const ProblemSpec& problem, int M, const RitzOptions& opts,
                const MinimizeResult& min) {
  Solution sol;
  sol.basis = opts.basis;
  sol.functions_per_component = ritz_function_count(opts.basis, problem.boundary_mode, M);
  sol.coefficients = min.x;
  sol.evaluator = ritz_trajectory(problem, opts.basis, M, min.x);
  auto& d = sol.diagnostics;
  d.converged = min.converged;
  d.iterations = min.iterations;
  d.gradient_norm = min.grad_norm;
  d.functional_value = evaluate_functional(problem, sol.evaluator, opts.quad);
  if (!opts.residual_diagnostics) {
    d.el_residual_l2 = std::numeric_limits<double>::quiet_NaN();
    return sol;
  }
  d.el_residual_l2 =
      residual_l2(el_residual(problem, sol.evaluator, default_residual_grid(problem), opts.quad));
  if (problem.boundary_mode == BoundaryMode::free_left) {
    d.natural_bc_residual = natural_bc_residual(problem, sol.evaluator, opts.quad);
  }
  return sol;
}

}  // namespace

std::string to_string(RitzBasis basis) { return basis == RitzBasis::sine ? "sine" : "lobatto"; }

RitzBasis ritz_basis_from_string(const std::string& name) {
  if (name == "sine") return RitzBasis::sine;
  if (name == "lobatto") return RitzBasis::lobatto;
  throw UsageError(fmt::format("unknown Ritz basis '{}'", name));
}

std::size_t ritz_function_count(RitzBasis basis, BoundaryMode mode, int M) {
  const auto m = static_cast<std::size_t>(M);
  return basis == RitzBasis::sine && mode == BoundaryMode::free_left ? 2 * m : m;
}

FunctionHandle ritz_trajectory(const ProblemSpec& problem, RitzBasis basis, int M,
                               const std::vector<double>& coefficients) {
  const std::size_t N = problem.lagrangian.N;
  const auto space =
      std::make_shared<TrialSpace>(basis, problem.boundary_mode, M, problem.interval);
  const std::size_t nf = space->size();
  if (coefficients.size() != N * nf) {
    throw UsageError(
        fmt::format("expected {} Ritz coefficients, got {}", N * nf, coefficients.size()));
  }
  const std::vector<Lift> lifts = make_lifts(problem);
  std::vector<ScalarFunction> comps;
  for (std::size_t j = 0; j < N; ++j) {
    const std::vector<double> c(coefficients.begin() + j * nf, coefficients.begin() + (j + 1) * nf);
    const Lift lift = lifts[j];
    auto sum = [space, c](double t, int which) {
      const std::vector<Value3> vals = space->eval(t);
      double s = 0.0;
      for (std::size_t f = 0; f < c.size(); ++f) {
        s += c[f] * (which == 0 ? vals[f].v : which == 1 ? vals[f].d1 : vals[f].d2);
      }
      return s;
    };
    comps.push_back(ScalarFunction{[sum, lift](double t) { return lift(t) + sum(t, 0); },
                                   [sum, lift](double t) { return lift.slope + sum(t, 1); },
                                   [sum](double t) { return sum(t, 2); }});
  }
  return FunctionHandle(std::move(comps), problem.interval);
}

Solution solve_ritz(const ProblemSpec& problem, int M, const RitzOptions& opts) {
  problem.validate();
  const TrialSpace space(opts.basis, problem.boundary_mode, M, problem.interval);
  const Discretization disc(problem, space, opts.quad);
  const Integrand& F = problem.lagrangian.integrand;
  const Objective J = [&](std::span<const double> c) { return disc.functional(F, c); };
  const std::vector<double> x0(problem.lagrangian.N * space.size(), 0.0);
  return finish(problem, M, opts, bfgs_minimize(J, x0, minimize_options(opts)));
}

Solution solve_isoperimetric(const ProblemSpec& problem, int M, const RitzOptions& opts) {
  problem.validate();
  if (!problem.isoperimetric) throw UsageError("problem has no isoperimetric constraint");
  const Integrand& F = problem.lagrangian.integrand;
  const Integrand& G = problem.isoperimetric->G;
  const double xi = problem.isoperimetric->xi;
  const double target = 1e-6 * (1.0 + std::abs(xi));

  const TrialSpace space(opts.basis, problem.boundary_mode, M, problem.interval);
  const Discretization disc(problem, space, opts.quad);
  const MinimizeOptions mopts = minimize_options(opts);

  std::vector<double> warm(problem.lagrangian.N * space.size(), 0.0);
  MinimizeResult last;
  auto gap = [&](double lambda) {
    const Integrand H = augmented_integrand(F, G, lambda);
    const Objective J = [&](std::span<const double> c) { return disc.functional(H, c); };
    last = bfgs_minimize(J, warm, mopts);
    warm = last.x;
    return disc.functional(G, last.x) - xi;
  };

  auto done = [&](double lambda) {
    const ProblemSpec H = with_integrand(problem, augmented_integrand(F, G, lambda));
    Solution sol = finish(H, M, opts, last);
    const double I = evaluate_constraint(problem, sol.evaluator, opts.quad);
    sol.diagnostics.functional_value = evaluate_functional(problem, sol.evaluator, opts.quad);
    sol.diagnostics.multiplier = lambda;
    sol.diagnostics.constraint_gap = std::abs(I - xi);
    const ProblemSpec Gp = with_integrand(problem, G);
    const double g_res =
        residual_l2(el_residual(Gp, sol.evaluator, default_residual_grid(problem), opts.quad));
    if (g_res <= 1e-6) {
      throw DomainError(
          fmt::format("the constrained solution is an extremal of the constraint functional "
                      "(EL residual of G = {:.3e}); no multiplier exists",
                      g_res));
    }
    return sol;
  };

  double x1 = 0.0, f1 = gap(x1);
  if (std::abs(f1) <= target) return done(x1);
  double x2 = 1.0, f2 = gap(x2);
  if (std::abs(f2) <= target) return done(x2);

  constexpr int max_expansions = 50;
  int expansions = 0;
  while (f1 * f2 > 0.0) {
    if (++expansions > max_expansions) {
      throw ConvergenceError(
          fmt::format("no multiplier bracket after {} expansions (gap {:.6e} at lambda={:.6e}); "
                      "the constraint value xi={} may be unattainable",
                      max_expansions, f2, x2, xi));
    }
    if (std::abs(f1) < std::abs(f2)) {
      x1 += 1.6 * (x1 - x2);
      f1 = gap(x1);
      if (std::abs(f1) <= target) return done(x1);
    } else {
      x2 += 1.6 * (x2 - x1);
      f2 = gap(x2);
      if (std::abs(f2) <= target) return done(x2);
    }
  }

  // Illinois regula falsi on the bracket [x1, x2].
  for (int iter = 0; iter < 200; ++iter) {
    const double x = (x1 * f2 - x2 * f1) / (f2 - f1);
    const double fx = gap(x);
    if (std::abs(fx) <= target) return done(x);
    if (fx * f2 < 0.0) {
      x1 = x2;
      f1 = f2;
    } else {
      f1 *= 0.5;
    }
    x2 = x;
    f2 = fx;
  }
  throw ConvergenceError(
      fmt::format("multiplier search did not reach the constraint tolerance {:.3e}", target));
}

}  // namespace gfvc
