#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gfvc/problem.hpp"

namespace gfvc::builtins {

/// F = (m/2) sum_j y'_j^2.
Integrand free_particle(std::size_t N, double mass = 1.0);
/// F = (m/2) sum_j y'_j^2 - (k/2) sum_j y_j^2.
Integrand harmonic(std::size_t N, double mass, double stiffness);
/// F = sum_j y'_j^2.
Integrand dirichlet(std::size_t N);
/// F = (1/2) sum_j v_j^2 for a single B-op argument (n = 1, m = 0).
Integrand example2_quadratic(std::size_t N);
/// G = sum_j y_j (area constraint).
Integrand area(std::size_t N);

/// Names accepted by by_name.
const std::vector<std::string>& names();

/// Registry lookup; `mass` and `stiffness` apply where meaningful. Throws
/// UsageError for unknown names. `n` and `m` give the argument layout the
/// integrand must read.
Integrand by_name(const std::string& name, std::size_t N, std::size_t n, std::size_t m,
                  double mass = 1.0, double stiffness = 1.0);

}  // namespace gfvc::builtins
