#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gfvc/errors.hpp"
#include "gfvc/kernel.hpp"
#include "gfvc/operators.hpp"

using namespace gfvc;

namespace {

const QuadratureSpec kQuad{};
const Interval kUnit{0.0, 1.0};
const ParamSet kLeft{0.0, 1.0, 1.0, 0.0};
const ParamSet kRight{0.0, 1.0, 0.0, 1.0};

FunctionHandle monomial(int n) {
  return FunctionHandle::scalar([n](double t) { return std::pow(t, n); },
                                [n](double t) { return n == 0 ? 0.0 : n * std::pow(t, n - 1); },
                                kUnit);
}

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace

TEST_CASE("k_op examples") {
  const Kernel rl = riemann_liouville_kernel(0.5);
  const RealFn one = [](double) { return 1.0; };
  CHECK(k_op(rl, kLeft, one, 0.25, kQuad) ==
        doctest::Approx(std::sqrt(0.25) / std::tgamma(1.5)).epsilon(1e-12));
  CHECK(k_op(rl, kLeft, one, 0.25, kQuad) == doctest::Approx(0.5641896).epsilon(1e-7));

  const RealFn zero = [](double) { return 0.0; };
  CHECK(k_op(rl, ParamSet{0, 1, 0.3, 0.7}, zero, 0.4, kQuad) == 0.0);
  CHECK(k_op(exponential_kernel(0.7), ParamSet{0, 1, -2, 5}, zero, 0.9, kQuad) == 0.0);

  const RealFn id = [](double t) { return t; };
  CHECK(k_op(constant_one_kernel(), kLeft, id, 1.0, kQuad) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("k_op endpoint branches vanish") {
  const Kernel rl = riemann_liouville_kernel(0.3);
  const RealFn f = [](double t) { return 1.0 + t * t; };
  CHECK(k_op(rl, kLeft, f, 0.0, kQuad) == 0.0);
  CHECK(k_op(rl, kRight, f, 1.0, kQuad) == 0.0);
}

TEST_CASE("b_op examples") {
  const Kernel comp = riemann_liouville_kernel(0.5);
  CHECK(b_op(comp, kLeft, monomial(1), 1.0, kQuad)[0] ==
        doctest::Approx(1.0 / std::tgamma(1.5)).epsilon(1e-12));
  CHECK(b_op(comp, kLeft, monomial(1), 1.0, kQuad)[0] == doctest::Approx(1.1283792).epsilon(1e-7));
  CHECK(b_op(comp, kLeft, monomial(2), 1.0, kQuad)[0] ==
        doctest::Approx(2.0 / std::tgamma(2.5)).epsilon(1e-12));
  CHECK(b_op(comp, kLeft, monomial(2), 1.0, kQuad)[0] == doctest::Approx(1.5045055).epsilon(1e-7));
  CHECK(b_op(comp, kLeft, FunctionHandle::constant(3.0, kUnit), 0.7, kQuad)[0] == 0.0);
}

TEST_CASE("b_op reports the finite-difference fallback") {
  const Kernel comp = riemann_liouville_kernel(0.5);
  const auto analytic = b_op_detailed(comp, kLeft, monomial(2), 0.6, kQuad);
  CHECK_FALSE(analytic.derivative_fallback);
  const auto fd = b_op_detailed(
      comp, kLeft, FunctionHandle::scalar([](double t) { return t * t; }, kUnit), 0.6, kQuad);
  CHECK(fd.derivative_fallback);
  CHECK(fd.value[0] == doctest::Approx(analytic.value[0]).epsilon(1e-9));
}

TEST_CASE("a_op examples") {
  const Kernel comp = riemann_liouville_kernel(0.5);
  const double h = default_diff_step(kLeft);
  const RealFn one = [](double) { return 1.0; };
  // x -> 1 through the largest stencil-admissible point
  const double x = 1.0 - h;
  CHECK(a_op(comp, kLeft, one, x, kQuad, h) ==
        doctest::Approx(std::pow(x, -0.5) / std::tgamma(0.5)).epsilon(1e-9));
  CHECK(a_op(comp, kLeft, one, x, kQuad, h) == doctest::Approx(0.5641896).epsilon(1e-3));

  const RealFn id = [](double t) { return t; };
  CHECK(a_op(comp, kLeft, id, 0.64, kQuad, h) ==
        doctest::Approx(std::sqrt(0.64) / std::tgamma(1.5)).epsilon(1e-9));
  CHECK(a_op(comp, kLeft, id, 0.64, kQuad, h) == doctest::Approx(0.9027033).epsilon(1e-7));

  const RealFn zero = [](double) { return 0.0; };
  CHECK(a_op(comp, kLeft, zero, 0.5, kQuad, h) == 0.0);
}

TEST_CASE("a_op rejects stencils leaving the interval") {
  const Kernel comp = riemann_liouville_kernel(0.5);
  const RealFn one = [](double) { return 1.0; };
  CHECK_THROWS_AS(a_op(comp, kLeft, one, 1.0, kQuad, 1e-3), DomainError);
  CHECK_THROWS_AS(a_op(comp, kLeft, one, 0.0005, kQuad, 1e-3), DomainError);
  CHECK_THROWS_AS(a_op(comp, kLeft, one, 0.5, kQuad, 0.0), DomainError);
}

TEST_CASE("domain and numerical errors") {
  const Kernel rl = riemann_liouville_kernel(0.5);
  const RealFn one = [](double) { return 1.0; };
  CHECK_THROWS_AS(k_op(rl, kLeft, one, 1.5, kQuad), DomainError);
  CHECK_THROWS_AS(k_op(rl, kLeft, one, -0.1, kQuad), DomainError);
  CHECK_THROWS_AS(k_op(hadamard_kernel(0.5), kLeft, one, 0.5, kQuad), DomainError);
  const RealFn bad = [](double t) { return t < 0.5 ? std::nan("") : 1.0; };
  CHECK_THROWS_AS(k_op(rl, kLeft, bad, 0.9, kQuad), NumericalError);
  try {
    k_op(rl, kLeft, bad, 0.9, kQuad);
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("t=") != std::string::npos);
  }
}

TEST_CASE("left RL integral, Caputo and RL derivative of monomials") {
  for (double alpha : {0.25, 0.5, 0.75}) {
    const Kernel k = riemann_liouville_kernel(alpha);
    const Kernel comp = riemann_liouville_kernel(1.0 - alpha);
    for (int n = 0; n <= 3; ++n) {
      const FunctionHandle f = monomial(n);
      const double gn = std::tgamma(n + 1.0);
      for (int i = 1; i <= 10; ++i) {
        const double x = i / 11.0;
        CAPTURE(alpha);
        CAPTURE(n);
        CAPTURE(x);
        const double integral = gn / std::tgamma(n + 1.0 + alpha) * std::pow(x, n + alpha);
        CHECK(rel_err(k_op(k, kLeft, f, x, kQuad)[0], integral) <= 1e-6);
        const double rl_der = gn / std::tgamma(n + 1.0 - alpha) * std::pow(x, n - alpha);
        CHECK(rel_err(a_op(comp, kLeft, f, x, kQuad, default_diff_step(kLeft))[0], rl_der) <= 1e-6);
        const double caputo = n == 0 ? 0.0 : rl_der;
        const double got = b_op(comp, kLeft, f, x, kQuad)[0];
        if (n == 0) {
          CHECK(got == 0.0);
        } else {
          CHECK(rel_err(got, caputo) <= 1e-6);
        }
      }
    }
  }
}

TEST_CASE("right RL integral of (1-t)^n") {
  for (double alpha : {0.25, 0.5, 0.75}) {
    const Kernel k = riemann_liouville_kernel(alpha);
    for (int n = 0; n <= 3; ++n) {
      const RealFn f = [n](double t) { return std::pow(1.0 - t, n); };
      for (int i = 1; i <= 10; ++i) {
        const double x = i / 11.0;
        const double want =
            std::tgamma(n + 1.0) / std::tgamma(n + 1.0 + alpha) * std::pow(1.0 - x, n + alpha);
        CHECK(rel_err(k_op(k, kRight, f, x, kQuad), want) <= 1e-8);
      }
    }
  }
}

TEST_CASE("exponential kernel K-op against closed form") {
  // int_0^x e^{c(x-t)} dt = (e^{cx} - 1)/c
  const double c = 0.5;
  const Kernel k = exponential_kernel(c);
  const RealFn one = [](double) { return 1.0; };
  for (double x : {0.1, 0.5, 0.9}) {
    CHECK(k_op(k, kLeft, one, x, kQuad) == doctest::Approx(std::expm1(c * x) / c).epsilon(1e-13));
  }
}

TEST_CASE("variable-order kernel with constant order matches RL") {
  const Kernel vo = variable_order_kernel([](double, double) { return 0.4; }, 0.0, 1.0);
  const Kernel rl = riemann_liouville_kernel(0.4);
  const RealFn f = [](double t) { return std::cos(t); };
  for (double x : {0.2, 0.5, 0.95}) {
    CHECK(k_op(vo, ParamSet{0, 1, 0.6, 0.4}, f, x, kQuad) ==
          doctest::Approx(k_op(rl, ParamSet{0, 1, 0.6, 0.4}, f, x, kQuad)).epsilon(1e-9));
  }
}

TEST_CASE("Hadamard integral of 1 against closed form") {
  // left Hadamard integral of 1 from a: log(x/a)^alpha / Gamma(alpha+1)
  const Kernel had = hadamard_kernel(0.5);
  const ParamSet P{1.0, std::numbers::e, 1.0, 0.0};
  const RealFn one = [](double) { return 1.0; };
  for (double x : {1.5, 2.0, 2.5}) {
    CHECK(k_op(had, P, one, x, kQuad) ==
          doctest::Approx(std::pow(std::log(x), 0.5) / std::tgamma(1.5)).epsilon(1e-9));
  }
}

TEST_CASE("K-op is linear in f and decomposes into left and right parts") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Kernel kernels[] = {riemann_liouville_kernel(0.35), exponential_kernel(-0.8),
                            constant_one_kernel()};
  for (int trial = 0; trial < 20; ++trial) {
    const double c0 = u(rng), c1 = u(rng), c2 = u(rng), d0 = u(rng), d1 = u(rng);
    const double lam = 3.0 * u(rng), mu = 3.0 * u(rng);
    const RealFn f = [=](double t) { return c0 + c1 * t + c2 * t * t; };
    const RealFn g = [=](double t) { return d0 + d1 * std::sin(3.0 * t); };
    const RealFn comb = [&](double t) { return lam * f(t) + mu * g(t); };
    const ParamSet P{0.0, 1.0, u(rng), u(rng)};
    const double x = 0.5 * (1.0 + u(rng));
    for (const Kernel& k : kernels) {
      const double kf = k_op(k, P, f, x, kQuad);
      const double kg = k_op(k, P, g, x, kQuad);
      const double kc = k_op(k, P, comb, x, kQuad);
      const double scale = std::abs(lam * kf) + std::abs(mu * kg) + 1e-300;
      CHECK(std::abs(kc - lam * kf - mu * kg) / scale <= 1e-12);

      const double left = k_op(k, kLeft, f, x, kQuad);
      const double right = k_op(k, kRight, f, x, kQuad);
      const double mixed = k_op(k, P, f, x, kQuad);
      CHECK(std::abs(mixed - (P.p * left + P.q * right)) <=
            1e-12 * (std::abs(left) + std::abs(right) + 1e-300));
    }
  }
}

TEST_CASE("K-op is converged under panel doubling") {
  const RealFn f = [](double t) { return std::exp(-t) * (1.0 + t * t); };
  const ParamSet P{0.0, 1.0, 0.3, 0.7};
  for (const Kernel& k : {riemann_liouville_kernel(0.1), riemann_liouville_kernel(0.5),
                          riemann_liouville_kernel(0.9), exponential_kernel(1.0)}) {
    for (double x : {0.0, 0.3, 0.77, 1.0}) {
      const double base = k_op(k, P, f, x, kQuad);
      const double fine = k_op(k, P, f, x, kQuad.refined());
      CHECK(std::abs(base - fine) <= kQuad.target_rel_tol * std::max(1.0, std::abs(fine)));
    }
  }
}

TEST_CASE("fractional integration by parts") {
  const FunctionHandle f = monomial(1);
  const FunctionHandle g = monomial(2);
  for (double alpha : {0.25, 0.5, 0.75}) {
    CAPTURE(alpha);
    for (const ParamSet& P : {kLeft, kRight, ParamSet{0, 1, 0.3, 0.7}}) {
      const auto k = check_ibp_k(riemann_liouville_kernel(alpha), P, f, g, kQuad);
      CHECK(k.abs_residual <= 1e-6);
      const auto b = check_ibp_b(riemann_liouville_kernel(1.0 - alpha), P, f, g, kQuad);
      CHECK(b.abs_residual <= 1e-5);
    }
  }
  const ParamSet mixed{0, 1, 0.3, 0.7};
  const auto ke = check_ibp_k(exponential_kernel(0.5), mixed, f, g, kQuad);
  CHECK(ke.abs_residual <= 1e-8);
  const auto be = check_ibp_b(exponential_kernel(0.5), mixed, f, g, kQuad);
  CHECK(be.abs_residual <= 1e-5);
}

TEST_CASE("integration by parts holds for non-polynomial functions") {
  const FunctionHandle f =
      FunctionHandle::scalar([](double t) { return std::sin(2 * t); },
                             [](double t) { return 2 * std::cos(2 * t); }, kUnit);
  const FunctionHandle g = FunctionHandle::scalar([](double t) { return std::exp(t); },
                                                  [](double t) { return std::exp(t); }, kUnit);
  const ParamSet P{0, 1, 0.6, -0.4};
  CHECK(check_ibp_k(riemann_liouville_kernel(0.6), P, f, g, kQuad).abs_residual <= 1e-7);
  CHECK(check_ibp_b(riemann_liouville_kernel(0.4), P, f, g, kQuad).abs_residual <= 1e-5);
  CHECK(check_ibp_k(exponential_kernel(-1.2), P, f, g, kQuad).abs_residual <= 1e-10);
}
