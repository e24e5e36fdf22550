#pragma once

namespace gfvc {

/// The p-set <a, b, p, q>: integration limits plus the weights of the left
/// (p) and right (q) branches of a generalized fractional integral. The
/// evaluation point is passed to the operators, not stored here.
struct ParamSet {
  double a = 0.0;
  double b = 1.0;
  double p = 1.0;
  double q = 0.0;

  /// Throws DomainError unless a < b and all fields are finite.
  void validate() const;

  static ParamSet left(double a, double b) { return {a, b, 1.0, 0.0}; }
  static ParamSet right(double a, double b) { return {a, b, 0.0, 1.0}; }

  friend bool operator==(const ParamSet&, const ParamSet&) = default;
};

/// Dual p-set: swaps p and q.
constexpr ParamSet dual_pset(const ParamSet& P) { return {P.a, P.b, P.q, P.p}; }

}  // namespace gfvc
