#include "gfvc/problem.hpp"

#include <fmt/core.h>

#include <vector>

#include "gfvc/errors.hpp"

namespace gfvc {

void LagrangianSpec::validate() const {
  if (N < 1) throw UsageError("lagrangian needs N >= 1 components");
  if (!integrand.value) throw UsageError("lagrangian has no integrand F");
  if (!integrand.gradient) throw UsageError("lagrangian has no partial derivatives");
  if (beta.size() != n) {
    throw UsageError(
        fmt::format("lagrangian declares n={} B-op arguments but lists {}", n, beta.size()));
  }
  if (gamma.size() != m) {
    throw UsageError(
        fmt::format("lagrangian declares m={} K-op arguments but lists {}", m, gamma.size()));
  }
}

std::string to_string(BoundaryMode mode) {
  return mode == BoundaryMode::fixed_both ? "fixed_both" : "free_left";
}

BoundaryMode boundary_mode_from_string(const std::string& name) {
  if (name == "fixed_both") return BoundaryMode::fixed_both;
  if (name == "free_left") return BoundaryMode::free_left;
  throw UsageError(fmt::format("unknown boundary mode '{}'", name));
}

void ProblemSpec::validate() const {
  lagrangian.validate();
  if (!(interval.a < interval.b)) {
    throw DomainError(fmt::format("interval [{}, {}] is empty", interval.a, interval.b));
  }
  const std::size_t N = lagrangian.N;
  if (y_b.size() != N) {
    throw UsageError(fmt::format("y_b has {} entries, expected {}", y_b.size(), N));
  }
  if (boundary_mode == BoundaryMode::fixed_both) {
    if (!y_a) throw UsageError("fixed_both requires y_a");
    if (y_a->size() != N) {
      throw UsageError(fmt::format("y_a has {} entries, expected {}", y_a->size(), N));
    }
  } else if (y_a) {
    throw UsageError("free_left requires y_a to be absent");
  }
  auto check_pset = [&](const OperatorTerm& term, const char* what) {
    term.pset.validate();
    if (term.pset.a != interval.a || term.pset.b != interval.b) {
      throw UsageError(fmt::format("{} parameter set [{}, {}] does not match the interval", what,
                                   term.pset.a, term.pset.b));
    }
    if (term.kernel.has_variable_order()) {
      throw UsageError("variable-order kernels are not supported inside problems");
    }
  };
  for (const auto& term : lagrangian.beta) check_pset(term, "B-op");
  for (const auto& term : lagrangian.gamma) check_pset(term, "K-op");
  if (lagrangian.alpha_kernel.has_variable_order()) {
    throw UsageError("variable-order kernels are not supported inside problems");
  }
  if (isoperimetric && (!isoperimetric->G.value || !isoperimetric->G.gradient)) {
    throw UsageError("isoperimetric constraint needs G and its partial derivatives");
  }
}

ProblemSpec with_integrand(const ProblemSpec& problem, Integrand integrand) {
  ProblemSpec out = problem;
  out.lagrangian.integrand = std::move(integrand);
  out.isoperimetric.reset();
  return out;
}

Integrand augmented_integrand(const Integrand& F, const Integrand& G, double lambda) {
  Integrand H;
  H.value = [F, G, lambda](double t, std::span<const double> z) {
    return F.value(t, z) - lambda * G.value(t, z);
  };
  H.gradient = [F, G, lambda](double t, std::span<const double> z, std::span<double> grad) {
    std::vector<double> g(grad.size());
    F.gradient(t, z, grad);
    G.gradient(t, z, g);
    for (std::size_t i = 0; i < grad.size(); ++i) grad[i] -= lambda * g[i];
  };
  return H;
}

}  // namespace gfvc
