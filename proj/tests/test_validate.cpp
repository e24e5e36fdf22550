#include <doctest.h>

#include "gfvc/builtins.hpp"
#include "gfvc/oscillator.hpp"
#include "gfvc/validate.hpp"

using namespace gfvc;

namespace {

bool contains(const std::vector<std::string>& lines, const std::string& needle) {
  for (const auto& l : lines) {
    if (l.find(needle) != std::string::npos) return true;
  }
  return false;
}

ProblemSpec scalar(Integrand F) {
  ProblemSpec p;
  p.lagrangian.integrand = std::move(F);
  p.interval = {0.0, 1.0};
  p.y_a = std::vector<double>{0.0};
  p.y_b = {1.0};
  return p;
}

}  // namespace

TEST_CASE("well-formed damped oscillator has no findings") {
  OscillatorConfig cfg;
  cfg.potential.kind = PotentialKind::harmonic;
  cfg.potential.stiffness = 4.0;
  cfg.kernel_coefficient = -0.1;
  const ValidationReport r = validate_problem(build_bck_problem(cfg));
  CHECK(r.ok());
  CHECK(contains(r.notes, "gradient check"));
}

TEST_CASE("a wrong partial derivative is reported with its index") {
  Integrand F = builtins::harmonic(1, 1.0, 4.0);
  const auto good = F.gradient;
  F.gradient = [good](double t, std::span<const double> z, std::span<double> g) {
    good(t, z, g);
    g[0] *= 1.1;
  };
  const ValidationReport r = validate_problem(scalar(F), 5);
  REQUIRE(r.findings.size() == 1);
  CHECK(contains(r.findings, "partial j=2 disagrees with finite difference"));

  ProblemSpec p = scalar(builtins::dirichlet(1));
  p.isoperimetric = Isoperimetric{F, 0.3};
  CHECK(contains(validate_problem(p).findings, "constraint G: partial j=2"));
}

TEST_CASE("operator terms report their integration-by-parts route") {
  ProblemSpec p = scalar(builtins::example2_quadratic(1));
  p.lagrangian.n = 1;
  p.lagrangian.beta = {{riemann_liouville_kernel(0.4), ParamSet{0, 1, 1, 0}}};
  ValidationReport r = validate_problem(p);
  CHECK(r.ok());
  CHECK(contains(r.notes, "L1 difference kernel"));

  p.interval = {1.0, 2.0};
  p.lagrangian.beta = {{hadamard_kernel(0.3), ParamSet{1, 2, 1, 0}}};
  r = validate_problem(p);
  CHECK(contains(r.findings, "no integration-by-parts route available (H4)"));

  p.interval = {0.0, 1.0};
  p.lagrangian.beta = {{hadamard_kernel(0.8), ParamSet{0, 1, 1, 0}}};
  CHECK(contains(validate_problem(p).findings, "hadamard kernel requires a > 0"));
}

TEST_CASE("structural problems are reported, not thrown") {
  ProblemSpec p = scalar(builtins::free_particle(1));
  p.y_b = {1.0, 2.0};
  ValidationReport r;
  CHECK_NOTHROW(r = validate_problem(p));
  CHECK(contains(r.findings, "structure:"));
}
