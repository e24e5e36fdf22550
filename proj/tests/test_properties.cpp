#include <doctest.h>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <cmath>
#include <random>

#include "gfvc/builtins.hpp"
#include "gfvc/functional.hpp"
#include "gfvc/operators.hpp"
#include "gfvc/quadrature.hpp"

using namespace gfvc;

namespace {

const Interval kUnit{0.0, 1.0};
const QuadratureSpec kQuad{};

FunctionHandle fn(RealFn v, RealFn d) {
  return FunctionHandle::scalar(std::move(v), std::move(d), kUnit);
}

ProblemSpec scalar_problem(Integrand F, Kernel k) {
  ProblemSpec p;
  p.lagrangian.integrand = std::move(F);
  p.lagrangian.alpha_kernel = std::move(k);
  p.interval = kUnit;
  p.y_a = std::vector<double>{0.0};
  p.y_b = {1.0};
  return p;
}

/// F = y'^2/2 + v^2/2 + y w (each block scalar); missing blocks are skipped.
Integrand mixed(bool has_v, bool has_w) {
  const std::size_t v = 2, w = has_v ? 3 : 2;
  Integrand F;
  F.value = [=](double, std::span<const double> z) {
    double r = 0.5 * z[1] * z[1];
    if (has_v) r += 0.5 * z[v] * z[v];
    if (has_w) r += z[0] * z[w];
    return r;
  };
  F.gradient = [=](double, std::span<const double> z, std::span<double> g) {
    std::fill(g.begin(), g.end(), 0.0);
    g[1] = z[1];
    if (has_v) g[v] = z[v];
    if (has_w) {
      g[0] = z[w];
      g[w] = z[0];
    }
  };
  return F;
}

}  // namespace

TEST_CASE("A-op agrees with the spline derivative of K-op samples") {
  const RealFn f = [](double t) { return std::cos(2 * t) + t * t; };
  for (double order : {0.3, 0.6}) {
    const Kernel comp = riemann_liouville_kernel(order);
    for (const ParamSet& P : {ParamSet{0, 1, 1, 0}, ParamSet{0, 1, 0, 1}}) {
      const int n = 129;
      const double h = 1.0 / (n - 1);
      std::vector<double> samples(n);
      for (int i = 0; i < n; ++i) samples[i] = k_op(comp, P, f, i * h, kQuad);
      // one-sided differences for the end slopes; the checks stay away from the ends
      const double d0 = (-3 * samples[0] + 4 * samples[1] - samples[2]) / (2 * h);
      const double d1 = (3 * samples[n - 1] - 4 * samples[n - 2] + samples[n - 3]) / (2 * h);
      const boost::math::interpolators::cardinal_cubic_b_spline<double> spline(
          samples.begin(), samples.end(), 0.0, h, d0, d1);
      for (double x : {0.3, 0.45, 0.6, 0.7}) {
        CHECK(std::abs(a_op(comp, P, f, x, kQuad, 1e-3) - spline.prime(x)) <= 1e-4);
      }
    }
  }
}

TEST_CASE("doubling panels halves the monomial error until the tolerance") {
  const double alpha = 0.4;
  const Kernel rl = riemann_liouville_kernel(alpha);
  const ParamSet P{0, 1, 1, 0};
  QuadratureSpec spec;
  spec.nodes_per_panel = 2;
  spec.panels = 1;
  double prev = std::numeric_limits<double>::infinity();
  for (int step = 0; step < 10; ++step) {
    double err = 0.0;
    for (int n = 0; n <= 3; ++n) {
      const RealFn f = [n](double t) { return std::pow(t, n); };
      for (int i = 1; i <= 10; ++i) {
        const double x = i / 11.0;
        const double exact =
            std::tgamma(n + 1.0) * std::pow(x, n + alpha) / std::tgamma(n + 1 + alpha);
        err = std::max(err, std::abs(k_op(rl, P, f, x, spec) - exact) / exact);
      }
    }
    if (prev > spec.target_rel_tol) {
      CHECK(err <= std::max(0.5 * prev, spec.target_rel_tol));
    }
    prev = err;
    spec = spec.refined();
  }
  CHECK(prev <= 1e-10);
}

TEST_CASE("first variation matches the integrated Euler-Lagrange residual") {
  std::vector<ProblemSpec> problems;
  problems.push_back(scalar_problem(builtins::harmonic(1, 1.3, 2.0), exponential_kernel(0.4)));
  {
    ProblemSpec p = scalar_problem(mixed(true, false), constant_one_kernel());
    p.lagrangian.n = 1;
    p.lagrangian.beta = {{riemann_liouville_kernel(0.6), ParamSet{0, 1, 1, 0}}};
    problems.push_back(p);
  }
  {
    ProblemSpec p = scalar_problem(mixed(false, true), exponential_kernel(-0.2));
    p.lagrangian.m = 1;
    p.lagrangian.gamma = {{riemann_liouville_kernel(0.5), ParamSet{0, 1, 0.5, 0.5}}};
    problems.push_back(p);
  }
  const FunctionHandle y = fn([](double t) { return std::sin(t) + t * t; },
                              [](double t) { return std::cos(t) + 2 * t; });

  // interior quadrature clear of the stencil margin
  const double delta = 2e-3;
  std::vector<double> nodes, weights;
  for_each_node(delta, 1 - delta, QuadratureSpec{16, 6, 1.0, 1e-10}, [&](double t, double w) {
    nodes.push_back(t);
    weights.push_back(w);
  });

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const double eps = 1e-5;
  for (const ProblemSpec& p : problems) {
    const Residual r = el_residual(p, y, nodes, kQuad);
    for (int trial = 0; trial < 5; ++trial) {
      const double c0 = coef(rng), c1 = coef(rng), c2 = coef(rng);
      auto eta = [=](double t) { return std::pow(t * (1 - t), 3) * (c0 + c1 * t + c2 * t * t); };
      auto deta = [=](double t) {
        const double b = t * (1 - t);
        return 3 * b * b * (1 - 2 * t) * (c0 + c1 * t + c2 * t * t) + b * b * b * (c1 + 2 * c2 * t);
      };
      auto shifted = [&](double s) {
        return fn([&, s](double t) { return y.value(0, t) + s * eta(t); },
                  [&, s](double t) { return y.derivative(0, t) + s * deta(t); });
      };
      const double fd = (evaluate_functional(p, shifted(eps), kQuad) -
                         evaluate_functional(p, shifted(-eps), kQuad)) /
                        (2 * eps);
      double integral = 0.0;
      for (std::size_t i = 0; i < nodes.size(); ++i)
        integral += weights[i] * eta(nodes[i]) * r[0][i];
      CHECK(std::abs(fd - integral) <= 5e-4 * std::abs(integral));
    }
  }
}
