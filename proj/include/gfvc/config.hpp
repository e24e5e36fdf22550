#pragma once

#include <json.hpp>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gfvc/errors.hpp"
#include "gfvc/function_handle.hpp"
#include "gfvc/kernel.hpp"
#include "gfvc/param_set.hpp"
#include "gfvc/problem.hpp"
#include "gfvc/quadrature.hpp"
#include "gfvc/ritz.hpp"

namespace gfvc::config {

using Json = nlohmann::json;

/// Malformed configuration. The message names the offending field path.
class ConfigError : public UsageError {
 public:
  using UsageError::UsageError;
};

/// Parses JSON text, reporting syntax errors with line and column.
Json parse_text(const std::string& text, const std::string& source);
Json load_file(const std::string& path);

/// Strict view of one JSON object: every key must be consumed before
/// finish(), otherwise the leftover keys are reported.
class Reader {
 public:
  Reader(const Json& node, std::string path);

  const std::string& path() const { return path_; }
  bool has(const std::string& key) const;

  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  int integer(const std::string& key) const;
  int integer(const std::string& key, int fallback) const;
  bool boolean(const std::string& key, bool fallback) const;
  std::string text(const std::string& key) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  std::vector<double> numbers(const std::string& key) const;

  Reader object(const std::string& key) const;
  std::optional<Reader> optional_object(const std::string& key) const;
  /// Elements of an array of objects.
  std::vector<Reader> objects(const std::string& key) const;
  const Json& raw(const std::string& key) const;

  void finish() const;

 private:
  const Json& at(const std::string& key) const;
  std::string field(const std::string& key) const;

  const Json* node_;
  std::string path_;
  mutable std::set<std::string> used_;
};

/// Text form of a kernel. variable_order uses alpha(x, t) = c0 + cx x + ct t.
struct KernelSpec {
  KernelKind kind = KernelKind::riemann_liouville;
  double order = 0.5;
  double coefficient = 0.0;
  double c0 = 0.5, cx = 0.0, ct = 0.0;

  /// `domain` bounds the order sampling of variable-order kernels.
  Kernel build(const Interval& domain = {}) const;
};

/// Analytic test function: polynomial, scale * exp(rate t) or
/// amplitude * sin(frequency t + phase).
struct FunctionSpec {
  enum class Kind { polynomial, exponential, sine };
  Kind kind = Kind::polynomial;
  std::vector<double> coefficients;
  double rate = 1.0, scale = 1.0;
  double frequency = 1.0, phase = 0.0, amplitude = 1.0;

  ScalarFunction build() const;
};

struct TermSpec {
  KernelSpec kernel;
  ParamSet pset;
};

/// Problem as written in a config: builtin Lagrangian plus operator terms.
struct ProblemDescription {
  std::string lagrangian = "free_particle";
  std::size_t N = 1;
  double mass = 1.0;
  double stiffness = 1.0;
  KernelSpec alpha_kernel{KernelKind::constant_one};
  std::vector<TermSpec> beta;
  std::vector<TermSpec> gamma;
  Interval interval;
  BoundaryMode boundary_mode = BoundaryMode::fixed_both;
  std::optional<std::vector<double>> y_a;
  std::vector<double> y_b;
  std::optional<std::string> constraint;
  double xi = 0.0;

  ProblemSpec build() const;
};

KernelSpec read_kernel(const Reader& r);
Json to_json(const KernelSpec& k);
ParamSet read_pset(const Reader& r);
Json to_json(const ParamSet& p);
FunctionSpec read_function(const Reader& r);
Json to_json(const FunctionSpec& f);
QuadratureSpec read_quadrature(const Reader& r);
Json to_json(const QuadratureSpec& q);
ProblemDescription read_problem(const Reader& r);
Json to_json(const ProblemDescription& p);
RitzOptions read_ritz(const Reader& r, int& M);

}  // namespace gfvc::config
