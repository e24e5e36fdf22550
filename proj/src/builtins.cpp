#include "gfvc/builtins.hpp"

#include <fmt/core.h>

#include <algorithm>

#include "gfvc/errors.hpp"

namespace gfvc::builtins {

Integrand free_particle(std::size_t N, double mass) { return harmonic(N, mass, 0.0); }

Integrand harmonic(std::size_t N, double mass, double stiffness) {
  Integrand I;
  I.value = [N, mass, stiffness](double, std::span<const double> z) {
    double kin = 0.0, pot = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      kin += z[N + j] * z[N + j];
      pot += z[j] * z[j];
    }
    return 0.5 * mass * kin - 0.5 * stiffness * pot;
  };
  I.gradient = [N, mass, stiffness](double, std::span<const double> z, std::span<double> g) {
    std::fill(g.begin(), g.end(), 0.0);
    for (std::size_t j = 0; j < N; ++j) {
      g[j] = -stiffness * z[j];
      g[N + j] = mass * z[N + j];
    }
  };
  return I;
}

Integrand dirichlet(std::size_t N) {
  Integrand I;
  I.value = [N](double, std::span<const double> z) {
    double s = 0.0;
    for (std::size_t j = 0; j < N; ++j) s += z[N + j] * z[N + j];
    return s;
  };
  I.gradient = [N](double, std::span<const double> z, std::span<double> g) {
    std::fill(g.begin(), g.end(), 0.0);
    for (std::size_t j = 0; j < N; ++j) g[N + j] = 2.0 * z[N + j];
  };
  return I;
}

Integrand example2_quadratic(std::size_t N) {
  Integrand I;
  I.value = [N](double, std::span<const double> z) {
    double s = 0.0;
    for (std::size_t j = 0; j < N; ++j) s += z[2 * N + j] * z[2 * N + j];
    return 0.5 * s;
  };
  I.gradient = [N](double, std::span<const double> z, std::span<double> g) {
    std::fill(g.begin(), g.end(), 0.0);
    for (std::size_t j = 0; j < N; ++j) g[2 * N + j] = z[2 * N + j];
  };
  return I;
}

Integrand area(std::size_t N) {
  Integrand I;
  I.value = [N](double, std::span<const double> z) {
    double s = 0.0;
    for (std::size_t j = 0; j < N; ++j) s += z[j];
    return s;
  };
  I.gradient = [N](double, std::span<const double>, std::span<double> g) {
    std::fill(g.begin(), g.end(), 0.0);
    for (std::size_t j = 0; j < N; ++j) g[j] = 1.0;
  };
  return I;
}

const std::vector<std::string>& names() {
  static const std::vector<std::string> list = {"free_particle", "harmonic", "dirichlet",
                                                "example2_quadratic", "area"};
  return list;
}

Integrand by_name(const std::string& name, std::size_t N, std::size_t n, std::size_t m, double mass,
                  double stiffness) {
  if (name == "example2_quadratic") {
    if (n != 1 || m != 0) {
      throw UsageError("example2_quadratic needs exactly one B-op argument and no K-op argument");
    }
    return example2_quadratic(N);
  }
  if (name == "free_particle") return free_particle(N, mass);
  if (name == "harmonic") return harmonic(N, mass, stiffness);
  if (name == "dirichlet") return dirichlet(N);
  if (name == "area") return area(N);
  throw UsageError(fmt::format("unknown builtin lagrangian '{}'", name));
}

}  // namespace gfvc::builtins
