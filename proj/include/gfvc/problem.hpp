#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gfvc/function_handle.hpp"
#include "gfvc/kernel.hpp"
#include "gfvc/param_set.hpp"

namespace gfvc {

/// Flat argument vector z = [y (N), y' (N), v_1 (N), ..., v_n (N), w_1 (N), ..., w_m (N)].
/// Flat index i corresponds to the partial derivative d_{i+2} F.
using IntegrandFn = std::function<double(double t, std::span<const double> z)>;
/// Writes all partial derivatives dF/dz_i into `grad` (same layout as z).
using GradientFn = std::function<void(double t, std::span<const double> z, std::span<double> grad)>;

struct Integrand {
  IntegrandFn value;
  GradientFn gradient;
};

/// A B-op or K-op argument of the Lagrangian: kernel and parameter set.
/// For B-op terms the kernel is the complementary one, h_{1-beta}.
struct OperatorTerm {
  Kernel kernel;
  ParamSet pset;
};

struct LagrangianSpec {
  std::size_t N = 1;
  std::size_t n = 0;
  std::size_t m = 0;
  Integrand integrand;
  Kernel alpha_kernel = constant_one_kernel();
  std::vector<OperatorTerm> beta;
  std::vector<OperatorTerm> gamma;

  std::size_t arg_count() const { return (n + m + 2) * N; }
  std::size_t y_index(std::size_t j) const { return j; }
  std::size_t yp_index(std::size_t j) const { return N + j; }
  std::size_t v_index(std::size_t i, std::size_t j) const { return (i + 2) * N + j; }
  std::size_t w_index(std::size_t k, std::size_t j) const { return (n + 2 + k) * N + j; }

  /// Throws UsageError on inconsistent sizes or missing callables.
  void validate() const;
};

/// Index bookkeeping between flat argument positions and the 1-based
/// partial-derivative numbering d_2 F ... d_{(n+m+2)N+1} F.
inline std::size_t paper_index(std::size_t flat) { return flat + 2; }
inline std::size_t flat_index(std::size_t paper) { return paper - 2; }

enum class BoundaryMode { fixed_both, free_left };

std::string to_string(BoundaryMode mode);
BoundaryMode boundary_mode_from_string(const std::string& name);

struct Isoperimetric {
  Integrand G;
  double xi = 0.0;
};

struct ProblemSpec {
  LagrangianSpec lagrangian;
  Interval interval;
  BoundaryMode boundary_mode = BoundaryMode::fixed_both;
  std::optional<std::vector<double>> y_a;
  std::vector<double> y_b;
  std::optional<Isoperimetric> isoperimetric;

  /// Parameter set of the functional itself: <a, b, 1, 0> evaluated at b.
  ParamSet functional_pset() const { return ParamSet{interval.a, interval.b, 1.0, 0.0}; }

  /// Throws UsageError / DomainError on malformed problems.
  void validate() const;
};

/// Same problem with the integrand replaced (used for H = F - lambda G and
/// for the constraint integrand G alone).
ProblemSpec with_integrand(const ProblemSpec& problem, Integrand integrand);

/// F - lambda G.
Integrand augmented_integrand(const Integrand& F, const Integrand& G, double lambda);

}  // namespace gfvc
