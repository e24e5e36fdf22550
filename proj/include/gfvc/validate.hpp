#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gfvc/problem.hpp"

namespace gfvc {

struct ValidationReport {
  /// Problems found; empty for a well-formed problem.
  std::vector<std::string> findings;
  /// What was checked and which admissibility route each operator term uses.
  std::vector<std::string> notes;

  bool ok() const { return findings.empty(); }
};

/// Checks structure, kernel admissibility of every operator term, and the
/// supplied partial derivatives against central differences (relative
/// tolerance 1e-5) at random interior arguments drawn with `seed`.
/// Never throws.
ValidationReport validate_problem(const ProblemSpec& problem, std::uint64_t seed = 0);

}  // namespace gfvc
