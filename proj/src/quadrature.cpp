#include "gfvc/quadrature.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "gfvc/errors.hpp"

namespace gfvc {

void QuadratureSpec::validate() const {
  if (nodes_per_panel < 2) {
    throw DomainError(fmt::format("nodes_per_panel must be >= 2, got {}", nodes_per_panel));
  }
  if (panels < 1) {
    throw DomainError(fmt::format("panels must be >= 1, got {}", panels));
  }
  if (!(grading_exponent >= 1.0)) {
    throw DomainError(fmt::format("grading_exponent must be >= 1, got {}", grading_exponent));
  }
  if (!(target_rel_tol > 0.0)) {
    throw DomainError("target_rel_tol must be positive");
  }
}

QuadratureSpec QuadratureSpec::halved() const {
  QuadratureSpec s = *this;
  s.panels = std::max(1, panels / 2);
  return s;
}

QuadratureSpec QuadratureSpec::refined() const {
  QuadratureSpec s = *this;
  s.panels = 2 * panels;
  return s;
}

namespace {

GaussRule compute_gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, compute_gauss_legendre(n)).first;
  }
  return it->second;
}

}  // namespace gfvc
