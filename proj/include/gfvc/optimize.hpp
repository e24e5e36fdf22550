#pragma once

#include <functional>
#include <span>
#include <vector>

namespace gfvc {

using Objective = std::function<double(std::span<const double>)>;

struct MinimizeOptions {
  int max_iters = 500;
  /// Relative central-difference step: h_i = grad_step * (1 + |x_i|).
  double grad_step = 1e-6;
  /// Stop when the gradient infinity-norm falls to tol.
  double tol = 1e-8;
};

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Central finite-difference gradient.
std::vector<double> fd_gradient(const Objective& f, std::span<const double> x, double grad_step);

/// BFGS with finite-difference gradients and Armijo backtracking.
///
/// Returns converged = false with the best iterate when max_iters is reached,
/// when ten consecutive steps change f by less than 1e-14 relative, or when
/// the line search stalls at the gradient noise floor. A line search that
/// fails while the model still predicts a meaningful decrease throws
/// ConvergenceError with the iterate in the message.
MinimizeResult bfgs_minimize(const Objective& f, std::vector<double> x0,
                             const MinimizeOptions& opts);

}  // namespace gfvc
