#include "gfvc/oscillator.hpp"

#include <fmt/core.h>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <cmath>
#include <limits>
#include <memory>

#include "gfvc/errors.hpp"

namespace gfvc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kSplinePoints = 129;

/// Second derivative of component j: analytic or spline.
class SecondDerivative {
 public:
  SecondDerivative(const FunctionHandle& y, std::size_t j) : y_(y), j_(j) {
    if (y.has_second_derivative(j)) return;
    const Interval& I = y.domain();
    const double h = I.length() / (kSplinePoints - 1);
    std::vector<double> samples(kSplinePoints);
    for (int i = 0; i < kSplinePoints; ++i) samples[i] = y.value(j, I.a + i * h);
    spline_ = std::make_shared<boost::math::interpolators::cardinal_cubic_b_spline<double>>(
        samples.begin(), samples.end(), I.a, h, y.derivative(j, I.a), y.derivative(j, I.b));
  }

  double operator()(double t) const {
    if (!spline_) return y_.second_derivative(j_, t);
    return spline_->double_prime(t);
  }

 private:
  const FunctionHandle& y_;
  std::size_t j_;
  std::shared_ptr<boost::math::interpolators::cardinal_cubic_b_spline<double>> spline_;
};

void require_three(const FunctionHandle& y) {
  if (y.dim() != 3) {
    throw UsageError(fmt::format("oscillator trajectories have 3 components, got {}", y.dim()));
  }
}

void require_in_domain(const FunctionHandle& y, const std::vector<double>& t_grid) {
  for (double t : t_grid) {
    if (!y.domain().contains(t)) {
      throw DomainError(
          fmt::format("grid point t={} outside [{}, {}]", t, y.domain().a, y.domain().b));
    }
  }
}

}  // namespace

std::string to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::free: return "free";
    case PotentialKind::harmonic: return "harmonic";
    case PotentialKind::gravity_y3: return "gravity_y3";
    case PotentialKind::custom: return "custom";
  }
  return "unknown";
}

PotentialKind potential_kind_from_string(const std::string& name) {
  for (auto kind : {PotentialKind::free, PotentialKind::harmonic, PotentialKind::gravity_y3,
                    PotentialKind::custom}) {
    if (to_string(kind) == name) return kind;
  }
  throw UsageError(fmt::format("unknown potential '{}'", name));
}

void OscillatorConfig::validate() const {
  if (!(mass > 0.0)) throw DomainError(fmt::format("mass must be positive, got {}", mass));
  if (!(interval.a < interval.b)) {
    throw DomainError(fmt::format("interval [{}, {}] is empty", interval.a, interval.b));
  }
  if (potential.kind == PotentialKind::harmonic && !(potential.stiffness > 0.0)) {
    throw DomainError(
        fmt::format("harmonic potential needs stiffness > 0, got {}", potential.stiffness));
  }
  if (potential.kind == PotentialKind::custom && (!potential.value || !potential.gradient)) {
    throw UsageError("custom potential needs V and its gradient");
  }
}

bool translation_invariant_y1(const Potential& p) {
  switch (p.kind) {
    case PotentialKind::free:
    case PotentialKind::gravity_y3: return true;
    case PotentialKind::harmonic: return false;
    case PotentialKind::custom: return p.translation_invariant_y1;
  }
  return false;
}

bool rotation_invariant_y1y2(const Potential& p) {
  switch (p.kind) {
    case PotentialKind::free:
    case PotentialKind::harmonic:
    case PotentialKind::gravity_y3: return true;
    case PotentialKind::custom: return p.rotation_invariant_y1y2;
  }
  return false;
}

double potential_value(const OscillatorConfig& cfg, std::span<const double> y) {
  const Potential& p = cfg.potential;
  switch (p.kind) {
    case PotentialKind::free: return 0.0;
    case PotentialKind::harmonic:
      return 0.5 * p.stiffness * (y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
    case PotentialKind::gravity_y3: return cfg.mass * p.gravity * y[2] * y[2];
    case PotentialKind::custom: return p.value(y);
  }
  return 0.0;
}

void potential_gradient(const OscillatorConfig& cfg, std::span<const double> y,
                        std::span<double> grad) {
  const Potential& p = cfg.potential;
  grad[0] = grad[1] = grad[2] = 0.0;
  switch (p.kind) {
    case PotentialKind::free: return;
    case PotentialKind::harmonic:
      for (int i = 0; i < 3; ++i) grad[i] = p.stiffness * y[i];
      return;
    case PotentialKind::gravity_y3: grad[2] = 2.0 * cfg.mass * p.gravity * y[2]; return;
    case PotentialKind::custom: p.gradient(y, grad); return;
  }
}

ProblemSpec build_bck_problem(const OscillatorConfig& cfg) {
  cfg.validate();
  ProblemSpec problem;
  LagrangianSpec& L = problem.lagrangian;
  L.N = 3;
  L.alpha_kernel = exponential_kernel(cfg.kernel_coefficient);
  L.integrand.value = [cfg](double, std::span<const double> z) {
    const double kin = z[3] * z[3] + z[4] * z[4] + z[5] * z[5];
    return 0.5 * cfg.mass * kin - potential_value(cfg, z.subspan(0, 3));
  };
  L.integrand.gradient = [cfg](double, std::span<const double> z, std::span<double> g) {
    double dv[3];
    potential_gradient(cfg, z.subspan(0, 3), dv);
    for (int i = 0; i < 3; ++i) {
      g[i] = -dv[i];
      g[3 + i] = cfg.mass * z[3 + i];
    }
  };
  problem.interval = cfg.interval;
  problem.boundary_mode = BoundaryMode::fixed_both;
  problem.y_a = std::vector<double>(cfg.y_a.begin(), cfg.y_a.end());
  problem.y_b = std::vector<double>(cfg.y_b.begin(), cfg.y_b.end());
  return problem;
}

std::vector<std::vector<double>> falva_residual(const OscillatorConfig& cfg,
                                                const FunctionHandle& y,
                                                const std::vector<double>& t_grid) {
  require_three(y);
  require_in_domain(y, t_grid);
  const SecondDerivative d2[3] = {{y, 0}, {y, 1}, {y, 2}};
  std::vector<std::vector<double>> out(3, std::vector<double>(t_grid.size()));
  for (std::size_t g = 0; g < t_grid.size(); ++g) {
    const double t = t_grid[g];
    const std::vector<double> yt = y(t);
    double dv[3];
    potential_gradient(cfg, yt, dv);
    for (std::size_t i = 0; i < 3; ++i) {
      out[i][g] = d2[i](t) + cfg.gamma() * y.derivative(i, t) + dv[i] / cfg.mass;
    }
  }
  return out;
}

FunctionHandle analytic_damped_bvp(const OscillatorConfig& cfg) {
  cfg.validate();
  if (cfg.potential.kind != PotentialKind::harmonic) {
    throw UsageError("the closed-form solution needs a harmonic potential");
  }
  const double gamma = cfg.gamma();
  const double omega2 = cfg.potential.stiffness / cfg.mass;
  const double disc = omega2 - 0.25 * gamma * gamma;
  if (!(disc > 0.0)) {
    throw DomainError(fmt::format("not underdamped: omega^2 = {} <= gamma^2/4 = {}", omega2,
                                  0.25 * gamma * gamma));
  }
  const double wd = std::sqrt(disc);
  const double a = cfg.interval.a;
  const double L = cfg.interval.length();
  const double sin_wl = std::sin(wd * L);
  if (std::abs(sin_wl) < 1e-12) {
    throw DomainError(
        fmt::format("degenerate boundary value problem: sin(omega_d (b - a)) = {:.3e} (resonance, "
                    "omega_d = {})",
                    sin_wl, wd));
  }
  std::vector<ScalarFunction> comps;
  for (int i = 0; i < 3; ++i) {
    const double A = cfg.y_a[i];
    const double B = (cfg.y_b[i] * std::exp(0.5 * gamma * L) - A * std::cos(wd * L)) / sin_wl;
    // y = E u with E = exp(-gamma tau / 2), u = A cos(wd tau) + B sin(wd tau)
    auto parts = [=](double t) {
      const double tau = t - a;
      const double E = std::exp(-0.5 * gamma * tau);
      const double u = A * std::cos(wd * tau) + B * std::sin(wd * tau);
      const double du = wd * (-A * std::sin(wd * tau) + B * std::cos(wd * tau));
      return std::array<double, 3>{E, u, du};
    };
    comps.push_back(ScalarFunction{[parts](double t) {
                                     const auto [E, u, du] = parts(t);
                                     return E * u;
                                   },
                                   [parts, gamma](double t) {
                                     const auto [E, u, du] = parts(t);
                                     return E * (du - 0.5 * gamma * u);
                                   },
                                   [parts, gamma, wd](double t) {
                                     const auto [E, u, du] = parts(t);
                                     return E *
                                            (-wd * wd * u - gamma * du + 0.25 * gamma * gamma * u);
                                   }});
  }
  return FunctionHandle(std::move(comps), cfg.interval);
}

std::vector<double> momentum_law_residual(const OscillatorConfig& cfg, const FunctionHandle& y,
                                          const std::vector<double>& t_grid) {
  require_three(y);
  require_in_domain(y, t_grid);
  if (!translation_invariant_y1(cfg.potential)) {
    throw UsageError(fmt::format("potential '{}' depends on y1: no translation symmetry",
                                 to_string(cfg.potential.kind)));
  }
  const SecondDerivative d2(y, 0);
  std::vector<double> out(t_grid.size());
  for (std::size_t g = 0; g < t_grid.size(); ++g) {
    const double t = t_grid[g];
    out[g] = cfg.mass * (d2(t) - cfg.kernel_coefficient * y.derivative(0, t));
  }
  return out;
}

std::vector<double> rotation_law_residual(const OscillatorConfig& cfg, const FunctionHandle& y,
                                          const std::vector<double>& t_grid) {
  require_three(y);
  require_in_domain(y, t_grid);
  if (!rotation_invariant_y1y2(cfg.potential)) {
    throw UsageError(fmt::format("potential '{}' is not rotation invariant in the (y1, y2) plane",
                                 to_string(cfg.potential.kind)));
  }
  const SecondDerivative d2a(y, 0), d2b(y, 1);
  std::vector<double> out(t_grid.size());
  for (std::size_t g = 0; g < t_grid.size(); ++g) {
    const double t = t_grid[g];
    const double y1 = y.value(0, t), y2 = y.value(1, t);
    const double v1 = y.derivative(0, t), v2 = y.derivative(1, t);
    const double ang = v1 * y2 - y1 * v2;
    const double dang = d2a(t) * y2 - y1 * d2b(t);
    out[g] = cfg.mass * (dang - cfg.kernel_coefficient * ang);
  }
  return out;
}

DemoResult run_oscillator_demo(const OscillatorConfig& cfg, int M, int points,
                               const RitzOptions& opts) {
  if (points < 2) throw UsageError("the demo needs at least 2 output points");
  const ProblemSpec problem = build_bck_problem(cfg);
  DemoResult res;
  res.solution = solve_ritz(problem, M, opts);
  const FunctionHandle& y = res.solution.evaluator;

  std::vector<double> grid(points);
  const Interval& I = cfg.interval;
  for (int i = 0; i < points; ++i) grid[i] = I.a + I.length() * i / (points - 1);

  std::optional<FunctionHandle> exact;
  if (cfg.potential.kind == PotentialKind::harmonic) exact = analytic_damped_bvp(cfg);
  const auto el = falva_residual(cfg, y, grid);
  std::vector<double> mom(points, kNaN), rot(points, kNaN);
  if (translation_invariant_y1(cfg.potential)) mom = momentum_law_residual(cfg, y, grid);
  if (rotation_invariant_y1y2(cfg.potential)) rot = rotation_law_residual(cfg, y, grid);

  res.linf_error = exact ? 0.0 : kNaN;
  for (int i = 0; i < points; ++i) {
    DemoRow row;
    row.t = grid[i];
    for (std::size_t j = 0; j < 3; ++j) {
      row.y[j] = y.value(j, row.t);
      row.analytic[j] = exact ? exact->value(j, row.t) : kNaN;
      row.el_residual[j] = el[j][i];
      if (exact) res.linf_error = std::max(res.linf_error, std::abs(row.y[j] - row.analytic[j]));
      res.max_el_residual = std::max(res.max_el_residual, std::abs(row.el_residual[j]));
    }
    row.momentum_residual = mom[i];
    row.rotation_residual = rot[i];
    res.rows.push_back(row);
  }
  return res;
}

}  // namespace gfvc
