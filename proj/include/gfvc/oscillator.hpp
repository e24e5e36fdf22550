#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gfvc/function_handle.hpp"
#include "gfvc/problem.hpp"
#include "gfvc/ritz.hpp"

namespace gfvc {

enum class PotentialKind { free, harmonic, gravity_y3, custom };

std::string to_string(PotentialKind kind);
PotentialKind potential_kind_from_string(const std::string& name);

struct Potential {
  PotentialKind kind = PotentialKind::free;
  /// k of V = k |y|^2 / 2 (harmonic).
  double stiffness = 0.0;
  /// g of V = m g y3^2 (gravity_y3).
  double gravity = 9.81;
  /// custom: V(y) and grad V(y).
  std::function<double(std::span<const double>)> value;
  std::function<void(std::span<const double>, std::span<double>)> gradient;
  /// custom: declared symmetries.
  bool translation_invariant_y1 = false;
  bool rotation_invariant_y1y2 = false;
};

struct OscillatorConfig {
  double mass = 1.0;
  Potential potential;
  /// c in the weight e^{c(b-t)}; the damping coefficient is gamma = -c.
  double kernel_coefficient = 0.0;
  Interval interval{0.0, 1.0};
  std::array<double, 3> y_a{0.0, 0.0, 0.0};
  std::array<double, 3> y_b{1.0, 0.0, 0.0};

  double gamma() const { return -kernel_coefficient; }
  /// Throws DomainError / UsageError on invalid settings.
  void validate() const;
};

/// The potential as evaluated by the demo (V and grad V), whatever its kind.
double potential_value(const OscillatorConfig& cfg, std::span<const double> y);
void potential_gradient(const OscillatorConfig& cfg, std::span<const double> y,
                        std::span<double> grad);
bool translation_invariant_y1(const Potential& p);
bool rotation_invariant_y1y2(const Potential& p);

/// N = 3, n = m = 0, exponential kernel c, L = m|y'|^2/2 - V(y) with
/// analytic partials, both ends fixed.
ProblemSpec build_bck_problem(const OscillatorConfig& cfg);

/// y_i'' + gamma y_i' + (1/m) dV/dy_i on the grid, [component][point].
/// Second derivatives come from the handle when present, otherwise from a
/// cubic spline through 129 uniform samples.
std::vector<std::vector<double>> falva_residual(const OscillatorConfig& cfg,
                                                const FunctionHandle& y,
                                                const std::vector<double>& t_grid);

/// Closed-form solution of y'' + gamma y' + omega^2 y = 0 with the configured
/// boundary values (harmonic potential, underdamped). Throws DomainError in
/// the overdamped regime or when sin(omega_d (b-a)) = 0 (resonance).
FunctionHandle analytic_damped_bvp(const OscillatorConfig& cfg);

/// d/dt(m y1') - c m y1'. Throws UsageError when V depends on y1.
std::vector<double> momentum_law_residual(const OscillatorConfig& cfg, const FunctionHandle& y,
                                          const std::vector<double>& t_grid);

/// d/dt(m y1' y2 - m y1 y2') - c m (y1' y2 - y1 y2'). Throws UsageError when V
/// is not rotation invariant in the (y1, y2) plane.
std::vector<double> rotation_law_residual(const OscillatorConfig& cfg, const FunctionHandle& y,
                                          const std::vector<double>& t_grid);

struct DemoRow {
  double t = 0.0;
  std::array<double, 3> y{};
  /// NaN without a closed form (non-harmonic potential).
  std::array<double, 3> analytic{};
  std::array<double, 3> el_residual{};
  /// NaN when the corresponding symmetry does not hold.
  double momentum_residual = 0.0;
  double rotation_residual = 0.0;
};

struct DemoResult {
  Solution solution;
  std::vector<DemoRow> rows;
  /// max |y - analytic| over rows; NaN without a closed form.
  double linf_error = 0.0;
  double max_el_residual = 0.0;
};

/// Solves the BCK problem by Ritz (basis size M) and tabulates trajectory,
/// closed form, residuals and conservation laws on `points` uniform points of
/// [a, b], endpoints included.
DemoResult run_oscillator_demo(const OscillatorConfig& cfg, int M, int points,
                               const RitzOptions& opts = {});

}  // namespace gfvc
