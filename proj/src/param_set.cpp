#include "gfvc/param_set.hpp"

#include <fmt/core.h>

#include <cmath>

#include "gfvc/errors.hpp"

namespace gfvc {

void ParamSet::validate() const {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(p) || !std::isfinite(q)) {
    throw DomainError("p-set has a non-finite field");
  }
  if (!(a < b)) {
    throw DomainError(fmt::format("p-set requires a < b, got a={} b={}", a, b));
  }
}

}  // namespace gfvc
