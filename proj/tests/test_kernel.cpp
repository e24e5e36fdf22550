#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gfvc/errors.hpp"
#include "gfvc/gamma.hpp"
#include "gfvc/kernel.hpp"
#include "gfvc/param_set.hpp"

using namespace gfvc;

TEST_CASE("gamma_fn matches reference values and std::tgamma on (0,3)") {
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma_fn(2.0) == doctest::Approx(1.0).epsilon(1e-14));
  double worst = 0.0;
  for (int i = 1; i < 3000; ++i) {
    const double x = i * 1e-3;
    worst = std::max(worst, std::abs(gamma_fn(x) / std::tgamma(x) - 1.0));
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("dual_pset swaps the weights and is an involution") {
  CHECK(dual_pset(ParamSet{0, 1, 1, 0}) == ParamSet{0, 1, 0, 1});
  CHECK(dual_pset(ParamSet{0, 1, 0.5, 0.5}) == ParamSet{0, 1, 0.5, 0.5});
  CHECK(dual_pset(dual_pset(ParamSet{0, 2, 3, -1})) == ParamSet{0, 2, 3, -1});

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = u(rng);
    const ParamSet P{a, a + 1.0 + std::abs(u(rng)), u(rng), u(rng)};
    const ParamSet D = dual_pset(P);
    CHECK(dual_pset(D) == P);
    CHECK(D.a == P.a);
    CHECK(D.b == P.b);
    CHECK(D.p == P.q);
    CHECK(D.q == P.p);
  }
}

TEST_CASE("ParamSet validation rejects a >= b") {
  CHECK_THROWS_AS(ParamSet({1, 1, 1, 0}).validate(), DomainError);
  CHECK_NOTHROW(ParamSet({0, 1, 1, 0}).validate());
}

TEST_CASE("make_kernel examples") {
  const Kernel rl = riemann_liouville_kernel(0.5);
  // (x - t)^(alpha-1) / Gamma(alpha) at x=1, t=0.75
  const double expected = 1.0 / (std::tgamma(0.5) * std::pow(0.25, 0.5));
  CHECK(rl.eval(1.0, 0.75) == doctest::Approx(expected).epsilon(1e-13));
  CHECK(rl.eval(1.0, 0.75) == doctest::Approx(1.1283792).epsilon(1e-7));

  const Kernel flat = exponential_kernel(0.0);
  CHECK(flat.eval(0.3, 0.1) == 1.0);
  CHECK(flat.eval(5.0, -2.0) == 1.0);

  const Kernel had = hadamard_kernel(0.5);
  CHECK(had.eval(std::numbers::e, 1.0) == doctest::Approx(0.5641896).epsilon(1e-7));
}

TEST_CASE("make_kernel metadata") {
  CHECK(riemann_liouville_kernel(0.3).singularity_exponent() == doctest::Approx(-0.7));
  CHECK(hadamard_kernel(0.6).singularity_exponent() == doctest::Approx(-0.4));
  CHECK(exponential_kernel(-0.1).singularity_exponent() == 0.0);
  CHECK(constant_one_kernel().singularity_exponent() == 0.0);
  CHECK(riemann_liouville_kernel(0.3).is_difference());
  CHECK_FALSE(hadamard_kernel(0.3).is_difference());
  CHECK_FALSE(hadamard_kernel(0.3).admissibility().any());
  CHECK(riemann_liouville_kernel(0.3).admissibility().l1_difference);
  CHECK(riemann_liouville_kernel(0.7).admissibility().square_integrable_on_square);
  CHECK_FALSE(riemann_liouville_kernel(0.3).admissibility().square_integrable_on_square);

  const Kernel vo =
      variable_order_kernel([](double x, double t) { return 0.4 + 0.2 * x * t; }, 0.0, 1.0);
  CHECK(vo.singularity_exponent() == doctest::Approx(-0.6));
}

TEST_CASE("make_kernel rejects bad orders") {
  CHECK_THROWS_AS(riemann_liouville_kernel(0.0), DomainError);
  CHECK_THROWS_AS(riemann_liouville_kernel(1.0), DomainError);
  CHECK_THROWS_AS(hadamard_kernel(1.5), DomainError);
  CHECK_THROWS_AS(variable_order_kernel([](double, double) { return 1.2; }, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(variable_order_kernel([](double x, double) { return x; }, 0.0, 1.0), DomainError);
  CHECK_NOTHROW(exponential_kernel(-3.0));
  CHECK_THROWS_AS(kernel_kind_from_string("riesz"), UsageError);
}

TEST_CASE("Riemann-Liouville kernel identity k * Gamma(alpha) * (x-t)^(1-alpha) = 1") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double alpha = 0.01 + 0.98 * u(rng);
    const Kernel k = riemann_liouville_kernel(alpha);
    const double t = u(rng);
    const double x = t + 1e-6 + u(rng);
    const double v = k.eval(x, t) * std::tgamma(alpha) * std::pow(x - t, 1.0 - alpha);
    CHECK(std::abs(v - 1.0) <= 1e-12);
  }
}

TEST_CASE("constant variable order reduces to the Riemann-Liouville kernel") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double a0 : {0.25, 0.5, 0.8}) {
    const Kernel vo = variable_order_kernel([a0](double, double) { return a0; }, 0.0, 1.0);
    const Kernel rl = riemann_liouville_kernel(a0);
    for (int i = 0; i < 200; ++i) {
      const double t = u(rng);
      const double x = t + 1e-4 + u(rng);
      CHECK(std::abs(vo.eval(x, t) - rl.eval(x, t)) <= 1e-12 * std::abs(rl.eval(x, t)));
    }
  }
}

TEST_CASE("Hadamard regularized factor is bounded near the diagonal") {
  const Kernel had = hadamard_kernel(0.4);
  const double x = 2.0;
  for (double s : {1e-1, 1e-4, 1e-8, 1e-12}) {
    const double t = x - s;
    const double direct = had.eval(x, t) * std::pow(x - t, 1.0 - 0.4);
    CHECK(had.regularized(x, t) == doctest::Approx(direct).epsilon(1e-9));
  }
  // limit: (x-t)/log(x/t) -> t, so regularized -> t^(1-alpha)/(Gamma(alpha) t)
  CHECK(had.regularized(x, x - 1e-14) ==
        doctest::Approx(std::pow(x, 0.6) / (std::tgamma(0.4) * x)).epsilon(1e-10));
}
