#include "gfvc/config.hpp"

#include <fmt/core.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "gfvc/builtins.hpp"

namespace gfvc::config {

namespace {

const char* type_name(const Json& j) { return j.type_name(); }

}  // namespace

Json parse_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // locate the byte offset as line:column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError(fmt::format("{}:{}:{}: JSON syntax error: {}", source, line, col, e.what()));
  }
}

Json load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

Reader::Reader(const Json& node, std::string path) : node_(&node), path_(std::move(path)) {
  if (!node.is_object()) {
    throw ConfigError(fmt::format("{}: expected an object, got {}",
                                  path_.empty() ? "<root>" : path_, type_name(node)));
  }
}

std::string Reader::field(const std::string& key) const {
  return path_.empty() ? key : path_ + "." + key;
}

bool Reader::has(const std::string& key) const { return node_->contains(key); }

const Json& Reader::at(const std::string& key) const {
  if (!node_->contains(key))
    throw ConfigError(fmt::format("{}: missing required field", field(key)));
  used_.insert(key);
  return (*node_)[key];
}

const Json& Reader::raw(const std::string& key) const { return at(key); }

double Reader::number(const std::string& key) const {
  const Json& j = at(key);
  if (!j.is_number()) {
    throw ConfigError(fmt::format("{}: expected a number, got {}", field(key), type_name(j)));
  }
  return j.get<double>();
}

double Reader::number(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

int Reader::integer(const std::string& key) const {
  const Json& j = at(key);
  if (!j.is_number_integer()) {
    throw ConfigError(fmt::format("{}: expected an integer, got {}", field(key), j.dump()));
  }
  return j.get<int>();
}

int Reader::integer(const std::string& key, int fallback) const {
  return has(key) ? integer(key) : fallback;
}

bool Reader::boolean(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const Json& j = at(key);
  if (!j.is_boolean()) {
    throw ConfigError(fmt::format("{}: expected true or false, got {}", field(key), j.dump()));
  }
  return j.get<bool>();
}

std::string Reader::text(const std::string& key) const {
  const Json& j = at(key);
  if (!j.is_string()) {
    throw ConfigError(fmt::format("{}: expected a string, got {}", field(key), type_name(j)));
  }
  return j.get<std::string>();
}

std::string Reader::text(const std::string& key, const std::string& fallback) const {
  return has(key) ? text(key) : fallback;
}

std::vector<double> Reader::numbers(const std::string& key) const {
  const Json& j = at(key);
  if (!j.is_array()) {
    throw ConfigError(
        fmt::format("{}: expected an array of numbers, got {}", field(key), type_name(j)));
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      throw ConfigError(
          fmt::format("{}[{}]: expected a number, got {}", field(key), i, type_name(j[i])));
    }
    out.push_back(j[i].get<double>());
  }
  return out;
}

Reader Reader::object(const std::string& key) const { return Reader(at(key), field(key)); }

std::optional<Reader> Reader::optional_object(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return object(key);
}

std::vector<Reader> Reader::objects(const std::string& key) const {
  const Json& j = at(key);
  if (!j.is_array()) {
    throw ConfigError(fmt::format("{}: expected an array, got {}", field(key), type_name(j)));
  }
  std::vector<Reader> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.emplace_back(j[i], fmt::format("{}[{}]", field(key), i));
  }
  return out;
}

void Reader::finish() const {
  for (const auto& [key, value] : node_->items()) {
    if (!used_.count(key)) throw ConfigError(fmt::format("{}: unknown key", field(key)));
  }
}

Kernel KernelSpec::build(const Interval& domain) const {
  switch (kind) {
    case KernelKind::riemann_liouville: return riemann_liouville_kernel(order);
    case KernelKind::hadamard: return hadamard_kernel(order);
    case KernelKind::exponential: return exponential_kernel(coefficient);
    case KernelKind::constant_one: return constant_one_kernel();
    case KernelKind::variable_order: {
      const double a0 = c0, ax = cx, at = ct;
      return variable_order_kernel([=](double x, double t) { return a0 + ax * x + at * t; },
                                   domain.a, domain.b);
    }
  }
  return constant_one_kernel();
}

ScalarFunction FunctionSpec::build() const {
  switch (kind) {
    case Kind::polynomial: {
      const std::vector<double> c = coefficients;
      auto horner = [](const std::vector<double>& p, double t) {
        double r = 0.0;
        for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * t + *it;
        return r;
      };
      std::vector<double> d1, d2;
      for (std::size_t i = 1; i < c.size(); ++i) d1.push_back(i * c[i]);
      for (std::size_t i = 1; i < d1.size(); ++i) d2.push_back(i * d1[i]);
      return {[=](double t) { return horner(c, t); }, [=](double t) { return horner(d1, t); },
              [=](double t) { return horner(d2, t); }};
    }
    case Kind::exponential: {
      const double r = rate, s = scale;
      return {[=](double t) { return s * std::exp(r * t); },
              [=](double t) { return s * r * std::exp(r * t); },
              [=](double t) { return s * r * r * std::exp(r * t); }};
    }
    case Kind::sine: {
      const double w = frequency, ph = phase, A = amplitude;
      return {[=](double t) { return A * std::sin(w * t + ph); },
              [=](double t) { return A * w * std::cos(w * t + ph); },
              [=](double t) { return -A * w * w * std::sin(w * t + ph); }};
    }
  }
  return {};
}

KernelSpec read_kernel(const Reader& r) {
  KernelSpec k;
  try {
    k.kind = kernel_kind_from_string(r.text("kind"));
  } catch (const UsageError& e) {
    throw ConfigError(fmt::format("{}.kind: {}", r.path(), e.what()));
  }
  switch (k.kind) {
    case KernelKind::riemann_liouville:
    case KernelKind::hadamard: k.order = r.number("order"); break;
    case KernelKind::exponential: k.coefficient = r.number("coefficient"); break;
    case KernelKind::variable_order:
      k.c0 = r.number("c0");
      k.cx = r.number("cx", 0.0);
      k.ct = r.number("ct", 0.0);
      break;
    case KernelKind::constant_one: break;
  }
  r.finish();
  return k;
}

Json to_json(const KernelSpec& k) {
  Json j;
  j["kind"] = std::string(to_string(k.kind));
  switch (k.kind) {
    case KernelKind::riemann_liouville:
    case KernelKind::hadamard: j["order"] = k.order; break;
    case KernelKind::exponential: j["coefficient"] = k.coefficient; break;
    case KernelKind::variable_order:
      j["c0"] = k.c0;
      j["cx"] = k.cx;
      j["ct"] = k.ct;
      break;
    case KernelKind::constant_one: break;
  }
  return j;
}

ParamSet read_pset(const Reader& r) {
  ParamSet P{r.number("a"), r.number("b"), r.number("p"), r.number("q")};
  r.finish();
  return P;
}

Json to_json(const ParamSet& p) { return Json{{"a", p.a}, {"b", p.b}, {"p", p.p}, {"q", p.q}}; }

FunctionSpec read_function(const Reader& r) {
  FunctionSpec f;
  const std::string kind = r.text("kind");
  if (kind == "polynomial") {
    f.kind = FunctionSpec::Kind::polynomial;
    f.coefficients = r.numbers("coefficients");
  } else if (kind == "exponential") {
    f.kind = FunctionSpec::Kind::exponential;
    f.rate = r.number("rate");
    f.scale = r.number("scale", 1.0);
  } else if (kind == "sine") {
    f.kind = FunctionSpec::Kind::sine;
    f.frequency = r.number("frequency");
    f.phase = r.number("phase", 0.0);
    f.amplitude = r.number("amplitude", 1.0);
  } else {
    throw ConfigError(
        fmt::format("{}.kind: unknown function '{}' (expected polynomial, exponential or sine)",
                    r.path(), kind));
  }
  r.finish();
  return f;
}

Json to_json(const FunctionSpec& f) {
  switch (f.kind) {
    case FunctionSpec::Kind::polynomial:
      return Json{{"kind", "polynomial"}, {"coefficients", f.coefficients}};
    case FunctionSpec::Kind::exponential:
      return Json{{"kind", "exponential"}, {"rate", f.rate}, {"scale", f.scale}};
    case FunctionSpec::Kind::sine:
      return Json{{"kind", "sine"},
                  {"frequency", f.frequency},
                  {"phase", f.phase},
                  {"amplitude", f.amplitude}};
  }
  return {};
}

QuadratureSpec read_quadrature(const Reader& r) {
  QuadratureSpec q;
  q.nodes_per_panel = r.integer("nodes_per_panel", q.nodes_per_panel);
  q.panels = r.integer("panels", q.panels);
  q.grading_exponent = r.number("grading_exponent", q.grading_exponent);
  q.target_rel_tol = r.number("target_rel_tol", q.target_rel_tol);
  r.finish();
  try {
    q.validate();
  } catch (const std::exception& e) {
    throw ConfigError(fmt::format("{}: {}", r.path(), e.what()));
  }
  return q;
}

Json to_json(const QuadratureSpec& q) {
  return Json{{"nodes_per_panel", q.nodes_per_panel},
              {"panels", q.panels},
              {"grading_exponent", q.grading_exponent},
              {"target_rel_tol", q.target_rel_tol}};
}

namespace {

std::vector<TermSpec> read_terms(const Reader& r, const std::string& key) {
  std::vector<TermSpec> out;
  if (!r.has(key)) return out;
  for (const Reader& t : r.objects(key)) {
    TermSpec term{read_kernel(t.object("kernel")), read_pset(t.object("pset"))};
    t.finish();
    out.push_back(term);
  }
  return out;
}

Json terms_to_json(const std::vector<TermSpec>& terms) {
  Json arr = Json::array();
  for (const TermSpec& t : terms)
    arr.push_back({{"kernel", to_json(t.kernel)}, {"pset", to_json(t.pset)}});
  return arr;
}

}  // namespace

ProblemDescription read_problem(const Reader& r) {
  ProblemDescription p;
  p.lagrangian = r.text("lagrangian");
  const int N = r.integer("N", 1);
  if (N < 1) throw ConfigError(fmt::format("{}.N: must be at least 1, got {}", r.path(), N));
  p.N = static_cast<std::size_t>(N);
  p.mass = r.number("mass", p.mass);
  p.stiffness = r.number("stiffness", p.stiffness);
  if (auto k = r.optional_object("alpha_kernel")) p.alpha_kernel = read_kernel(*k);
  p.beta = read_terms(r, "beta");
  p.gamma = read_terms(r, "gamma");
  const Reader iv = r.object("interval");
  p.interval = {iv.number("a"), iv.number("b")};
  iv.finish();
  try {
    p.boundary_mode = boundary_mode_from_string(r.text("boundary_mode", "fixed_both"));
  } catch (const UsageError& e) {
    throw ConfigError(fmt::format("{}.boundary_mode: {}", r.path(), e.what()));
  }
  if (r.has("y_a")) p.y_a = r.numbers("y_a");
  p.y_b = r.numbers("y_b");
  if (auto iso = r.optional_object("isoperimetric")) {
    p.constraint = iso->text("G");
    p.xi = iso->number("xi");
    iso->finish();
  }
  r.finish();
  return p;
}

Json to_json(const ProblemDescription& p) {
  Json j;
  j["lagrangian"] = p.lagrangian;
  j["N"] = p.N;
  j["mass"] = p.mass;
  j["stiffness"] = p.stiffness;
  j["alpha_kernel"] = to_json(p.alpha_kernel);
  if (!p.beta.empty()) j["beta"] = terms_to_json(p.beta);
  if (!p.gamma.empty()) j["gamma"] = terms_to_json(p.gamma);
  j["interval"] = Json{{"a", p.interval.a}, {"b", p.interval.b}};
  j["boundary_mode"] = to_string(p.boundary_mode);
  if (p.y_a) j["y_a"] = *p.y_a;
  j["y_b"] = p.y_b;
  if (p.constraint) j["isoperimetric"] = Json{{"G", *p.constraint}, {"xi", p.xi}};
  return j;
}

ProblemSpec ProblemDescription::build() const {
  ProblemSpec spec;
  LagrangianSpec& L = spec.lagrangian;
  L.N = N;
  L.n = beta.size();
  L.m = gamma.size();
  L.integrand = builtins::by_name(lagrangian, N, L.n, L.m, mass, stiffness);
  L.alpha_kernel = alpha_kernel.build(interval);
  for (const TermSpec& t : beta) L.beta.push_back({t.kernel.build(interval), t.pset});
  for (const TermSpec& t : gamma) L.gamma.push_back({t.kernel.build(interval), t.pset});
  spec.interval = interval;
  spec.boundary_mode = boundary_mode;
  spec.y_a = y_a;
  spec.y_b = y_b;
  if (constraint) {
    spec.isoperimetric =
        Isoperimetric{builtins::by_name(*constraint, N, L.n, L.m, mass, stiffness), xi};
  }
  spec.validate();
  return spec;
}

RitzOptions read_ritz(const Reader& r, int& M) {
  RitzOptions o;
  M = r.integer("M", M);
  o.max_iters = r.integer("max_iters", o.max_iters);
  o.grad_step = r.number("grad_step", o.grad_step);
  o.tol = r.number("tol", o.tol);
  try {
    o.basis = ritz_basis_from_string(r.text("basis", to_string(o.basis)));
  } catch (const UsageError& e) {
    throw ConfigError(fmt::format("{}.basis: {}", r.path(), e.what()));
  }
  o.residual_diagnostics = r.boolean("residual_diagnostics", o.residual_diagnostics);
  if (auto q = r.optional_object("quadrature")) o.quad = read_quadrature(*q);
  r.finish();
  if (M < 1) throw ConfigError(fmt::format("{}.M: must be at least 1, got {}", r.path(), M));
  return o;
}

}  // namespace gfvc::config
