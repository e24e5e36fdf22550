#pragma once

#include <iosfwd>
#include <string>

namespace gfvc::cli {

/// Fixed notation with 12 decimals for 1e-3 <= |v| < 1e6 and for 0,
/// otherwise scientific notation with 12 significant digits.
std::string format_number(double v);

/// Entry point of the `gfvc` tool. Returns 0 on success, 1 on usage or
/// configuration errors, 2 when a checked quantity exceeds its threshold.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gfvc::cli
