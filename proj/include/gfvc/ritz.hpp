#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gfvc/function_handle.hpp"
#include "gfvc/problem.hpp"
#include "gfvc/quadrature.hpp"

namespace gfvc {

/// Trial functions added to the boundary lift.
///
/// lobatto: integrated Legendre polynomials. For fixed_both,
///   phi_l' = c_l P_l(s), phi_l(a) = phi_l(b) = 0, l = 1..M;
/// for free_left, psi_l' = c_l P_{l-1}(s), psi_l(b) = 0. The derivatives are
/// orthonormal in L2(a, b), which makes the Dirichlet part of the Hessian the
/// identity.
///
/// sine: phi_l = sin(l pi (t-a)/L); free_left adds
/// psi_l = cos((l - 1/2) pi (t-a)/L), giving 2M functions per component.
enum class RitzBasis { lobatto, sine };

std::string to_string(RitzBasis basis);
RitzBasis ritz_basis_from_string(const std::string& name);

struct RitzOptions {
  int max_iters = 1000;
  double grad_step = 1e-6;
  double tol = 1e-9;
  RitzBasis basis = RitzBasis::lobatto;
  QuadratureSpec quad{};
  /// Compute el_residual_l2 (and the natural boundary residual) after solving.
  bool residual_diagnostics = true;
};

struct SolutionDiagnostics {
  double functional_value = 0.0;
  /// NaN when RitzOptions::residual_diagnostics is off.
  double el_residual_l2 = 0.0;
  std::optional<std::vector<double>> natural_bc_residual;
  std::optional<double> multiplier;
  std::optional<double> constraint_gap;
  bool converged = false;
  int iterations = 0;
  double gradient_norm = 0.0;
};

struct Solution {
  /// Row-major N x (functions per component).
  std::vector<double> coefficients;
  std::size_t functions_per_component = 0;
  RitzBasis basis = RitzBasis::lobatto;
  FunctionHandle evaluator;
  SolutionDiagnostics diagnostics;

  bool non_converged() const { return !diagnostics.converged; }
};

/// Number of trial functions per component for basis size M.
std::size_t ritz_function_count(RitzBasis basis, BoundaryMode mode, int M);

/// Trajectory lift + sum c_{jl} phi_l with analytic first and second
/// derivatives. `coefficients` is row-major N x ritz_function_count(...).
FunctionHandle ritz_trajectory(const ProblemSpec& problem, RitzBasis basis, int M,
                               const std::vector<double>& coefficients);

/// Minimizes the discretized functional over the Ritz space. Returns the best
/// iterate with converged = false when the optimizer stops early; a failed
/// line search throws ConvergenceError.
Solution solve_ritz(const ProblemSpec& problem, int M, const RitzOptions& opts = {});

/// Extremizes H = F - lambda G, with lambda found by a bracketed secant
/// (Illinois) search on lambda -> I(y*(lambda)) - xi until the gap is at most
/// 1e-6 (1 + |xi|). Throws ConvergenceError when no bracket is found in 50
/// expansions and DomainError when the result is an extremal of I.
Solution solve_isoperimetric(const ProblemSpec& problem, int M, const RitzOptions& opts = {});

}  // namespace gfvc
