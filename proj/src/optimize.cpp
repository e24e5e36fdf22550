#include "gfvc/optimize.hpp"

#include <fmt/core.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "gfvc/errors.hpp"

namespace gfvc {

namespace {

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

using Matrix = std::vector<std::vector<double>>;

Matrix identity(std::size_t n, double scale) {
  Matrix H(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) H[i][i] = scale;
  return H;
}

std::vector<double> mat_vec(const Matrix& H, const std::vector<double>& v) {
  std::vector<double> out(v.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = dot(H[i], v);
  return out;
}

}  // namespace

std::vector<double> fd_gradient(const Objective& f, std::span<const double> x, double grad_step) {
  std::vector<double> work(x.begin(), x.end());
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = grad_step * (1.0 + std::abs(x[i]));
    const double xi = work[i];
    work[i] = xi + h;
    const double fp = f(work);
    work[i] = xi - h;
    const double fm = f(work);
    work[i] = xi;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

MinimizeResult bfgs_minimize(const Objective& f, std::vector<double> x0,
                             const MinimizeOptions& opts) {
  const std::size_t n = x0.size();
  MinimizeResult res;
  res.x = std::move(x0);
  res.value = f(res.x);
  if (n == 0) {
    res.converged = true;
    return res;
  }
  std::vector<double> g = fd_gradient(f, res.x, opts.grad_step);
  res.grad_norm = inf_norm(g);
  Matrix H = identity(n, 1.0);
  bool scaled = false;
  int stalled = 0;
  constexpr double c1 = 1e-4;
  constexpr int max_stalled = 10;
  const double eps = std::numeric_limits<double>::epsilon();

  for (int iter = 0; iter < opts.max_iters; ++iter) {
    res.iterations = iter;
    if (res.grad_norm <= opts.tol) {
      res.converged = true;
      return res;
    }
    std::vector<double> p = mat_vec(H, g);
    for (double& v : p) v = -v;
    double slope = dot(g, p);
    if (!(slope < 0.0)) {
      H = identity(n, 1.0);
      for (std::size_t i = 0; i < n; ++i) p[i] = -g[i];
      slope = dot(g, p);
    }

    double step = 1.0;
    std::vector<double> trial(n);
    double f_trial = 0.0;
    bool accepted = false;
    for (int k = 0; k < 60; ++k) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = res.x[i] + step * p[i];
      f_trial = f(trial);
      if (std::isfinite(f_trial) && f_trial <= res.value + c1 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // A decrease below the rounding level of f cannot be resolved.
      const double floor = 1e3 * eps * (1.0 + std::abs(res.value));
      if (-slope <= floor || res.grad_norm <= 1e3 * opts.tol) return res;
      throw ConvergenceError(fmt::format(
          "line search failed at iteration {} (f={:.12e}, |grad|={:.3e}); iterate: [{:.12e}]", iter,
          res.value, res.grad_norm, fmt::join(res.x, ", ")));
    }

    // Accepted steps that no longer change f beyond rounding mean the
    // gradient is dominated by difference noise.
    const double decrease = res.value - f_trial;
    stalled = decrease <= 1e-14 * (1.0 + std::abs(res.value)) ? stalled + 1 : 0;

    std::vector<double> g_new = fd_gradient(f, trial, opts.grad_step);
    std::vector<double> s(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = trial[i] - res.x[i];
      y[i] = g_new[i] - g[i];
    }
    res.x = trial;
    res.value = f_trial;
    g = std::move(g_new);
    res.grad_norm = inf_norm(g);

    if (stalled >= max_stalled) return res;

    const double sy = dot(s, y);
    if (sy <= 1e-12 * std::sqrt(dot(s, s) * dot(y, y))) continue;
    if (!scaled) {
      H = identity(n, sy / dot(y, y));
      scaled = true;
    }
    // H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T
    const double rho = 1.0 / sy;
    const std::vector<double> Hy = mat_vec(H, y);
    const double yHy = dot(y, Hy);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        H[i][j] += -rho * (Hy[i] * s[j] + s[i] * Hy[j]) + (rho * rho * yHy + rho) * s[i] * s[j];
      }
    }
  }
  res.iterations = opts.max_iters;
  res.converged = res.grad_norm <= opts.tol;
  return res;
}

}  // namespace gfvc
