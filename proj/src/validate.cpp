#include "gfvc/validate.hpp"

#include <fmt/core.h>

#include <cmath>
#include <random>

namespace gfvc {

namespace {

constexpr int kSamples = 5;
constexpr double kRelTol = 1e-5;

void check_gradient(const Integrand& I, const LagrangianSpec& L, const Interval& iv,
                    const char* label, std::mt19937_64& rng, ValidationReport& report) {
  const std::size_t size = L.arg_count();
  std::uniform_real_distribution<double> arg(-1.0, 1.0);
  std::uniform_real_distribution<double> time(iv.a, iv.b);
  std::vector<bool> flagged(size, false);
  std::vector<double> z(size), grad(size);
  for (int sample = 0; sample < kSamples; ++sample) {
    const double t = time(rng);
    for (double& v : z) v = arg(rng);
    std::fill(grad.begin(), grad.end(), 0.0);
    I.gradient(t, z, grad);
    for (std::size_t i = 0; i < size; ++i) {
      const double h = 1e-6 * (1.0 + std::abs(z[i]));
      const double zi = z[i];
      z[i] = zi + h;
      const double fp = I.value(t, z);
      z[i] = zi - h;
      const double fm = I.value(t, z);
      z[i] = zi;
      const double fd = (fp - fm) / (2.0 * h);
      const double scale = std::max({std::abs(fd), std::abs(grad[i]), 1e-3});
      if (!std::isfinite(grad[i]) || std::abs(grad[i] - fd) > kRelTol * scale) {
        if (!flagged[i]) {
          report.findings.push_back(fmt::format(
              "{}partial j={} disagrees with finite difference ({:.6e} vs {:.6e} at t={:.6f})",
              label, paper_index(i), grad[i], fd, t));
          flagged[i] = true;
        }
      }
    }
  }
}

void check_route(const OperatorTerm& term, const std::string& what, ValidationReport& report) {
  const Admissibility adm = term.kernel.admissibility();
  const std::string desc = term.kernel.describe();
  if (!adm.any()) {
    report.findings.push_back(
        fmt::format("{} ({}): no integration-by-parts route available (H4)", what, desc));
    return;
  }
  report.notes.push_back(fmt::format("{} ({}): integration by parts via {}", what, desc,
                                     adm.square_integrable_on_square
                                         ? "square-integrable kernel on the square"
                                         : "L1 difference kernel"));
}

}  // namespace

ValidationReport validate_problem(const ProblemSpec& problem, std::uint64_t seed) {
  ValidationReport report;
  try {
    problem.validate();
  } catch (const std::exception& e) {
    report.findings.push_back(fmt::format("structure: {}", e.what()));
    return report;
  }
  const LagrangianSpec& L = problem.lagrangian;
  for (std::size_t i = 0; i < L.n; ++i) {
    check_route(L.beta[i], fmt::format("B-op argument {}", i + 1), report);
    if (L.beta[i].kernel.kind() == KernelKind::hadamard && !(problem.interval.a > 0.0)) {
      report.findings.push_back("hadamard kernel requires a > 0");
    }
  }
  for (std::size_t k = 0; k < L.m; ++k) {
    check_route(L.gamma[k], fmt::format("K-op argument {}", k + 1), report);
    if (L.gamma[k].kernel.kind() == KernelKind::hadamard && !(problem.interval.a > 0.0)) {
      report.findings.push_back("hadamard kernel requires a > 0");
    }
  }

  std::string layout = fmt::format("argument layout: y -> partials 2..{}, y' -> {}..{}", L.N + 1,
                                   L.N + 2, 2 * L.N + 1);
  if (L.n > 0) {
    layout += fmt::format(", B-op blocks {}..{}", 2 * L.N + 2, (L.n + 2) * L.N + 1);
  }
  if (L.m > 0) {
    layout += fmt::format(", K-op blocks {}..{}", (L.n + 2) * L.N + 2, L.arg_count() + 1);
  }
  report.notes.push_back(layout);

  std::mt19937_64 rng(seed);
  try {
    check_gradient(L.integrand, L, problem.interval, "", rng, report);
    if (problem.isoperimetric) {
      check_gradient(problem.isoperimetric->G, L, problem.interval, "constraint G: ", rng, report);
    }
    report.notes.push_back(
        fmt::format("gradient check: {} random interior arguments, relative tolerance {:.0e}",
                    kSamples, kRelTol));
  } catch (const std::exception& e) {
    report.findings.push_back(fmt::format("gradient check failed to run: {}", e.what()));
  }
  return report;
}

}  // namespace gfvc
