#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace gfvc {

struct QuadratureSpec {
  int nodes_per_panel = 16;
  int panels = 8;
  /// Power of the panel grading toward the ends of each integration range;
  /// 1 gives uniform panels.
  double grading_exponent = 3.0;
  /// Accuracy the caller expects; used by error-estimating helpers.
  double target_rel_tol = 1e-10;

  /// Throws DomainError on out-of-range fields.
  void validate() const;
  /// Spec for inner (nested) evaluations: half the panels.
  QuadratureSpec halved() const;
  /// Same rule with twice the panels.
  QuadratureSpec refined() const;

  friend bool operator==(const QuadratureSpec&, const QuadratureSpec&) = default;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached n-point Gauss-Legendre rule; the reference stays valid for the
/// lifetime of the program.
const GaussRule& gauss_legendre(int n);

/// Breakpoint of panel i out of `panels` on [0, 1], graded toward both ends.
inline double graded_break(int i, int panels, double exponent) {
  const double s = static_cast<double>(i) / panels;
  if (s <= 0.5) return 0.5 * std::pow(2.0 * s, exponent);
  return 1.0 - 0.5 * std::pow(2.0 * (1.0 - s), exponent);
}

/// Calls visit(t, w) for every node of the composite Gauss-Legendre rule on
/// [lo, hi] with panels graded toward both endpoints.
template <class V>
void for_each_node(double lo, double hi, const QuadratureSpec& spec, V&& visit) {
  if (hi == lo) return;
  const GaussRule& rule = gauss_legendre(spec.nodes_per_panel);
  const double len = hi - lo;
  double left = lo;
  for (int i = 1; i <= spec.panels; ++i) {
    const double right = lo + len * graded_break(i, spec.panels, spec.grading_exponent);
    const double half = 0.5 * (right - left);
    const double mid = 0.5 * (right + left);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      visit(mid + half * rule.nodes[k], half * rule.weights[k]);
    }
    left = right;
  }
}

/// Node visitor for a geometric mesh refined toward lo: breakpoints
/// lo + len * ratio^k for k = levels..1, then `spec.panels` graded panels on
/// the remaining [lo + len*ratio, hi].
template <class V>
void for_each_node_geometric(double lo, double hi, double ratio, int levels,
                             const QuadratureSpec& spec, V&& visit) {
  if (hi == lo) return;
  const GaussRule& rule = gauss_legendre(spec.nodes_per_panel);
  const double len = hi - lo;
  double left = lo;
  for (int k = levels; k >= 1; --k) {
    const double right = lo + len * std::pow(ratio, k);
    const double half = 0.5 * (right - left);
    const double mid = 0.5 * (right + left);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      visit(mid + half * rule.nodes[q], half * rule.weights[q]);
    }
    left = right;
  }
  for_each_node(left, hi, spec, visit);
}

template <class F>
double integrate(F&& f, double lo, double hi, const QuadratureSpec& spec) {
  double total = 0.0;
  for_each_node(lo, hi, spec, [&](double t, double w) { total += w * f(t); });
  return total;
}

template <class F>
double integrate_geometric(F&& f, double lo, double hi, double ratio, int levels,
                           const QuadratureSpec& spec) {
  double total = 0.0;
  for_each_node_geometric(lo, hi, ratio, levels, spec,
                          [&](double t, double w) { total += w * f(t); });
  return total;
}

}  // namespace gfvc
