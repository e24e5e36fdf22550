#include "gfvc/cli.hpp"

#include <fmt/core.h>

#include <CLI11.hpp>
#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>

#include "gfvc/config.hpp"
#include "gfvc/functional.hpp"
#include "gfvc/noether.hpp"
#include "gfvc/operators.hpp"
#include "gfvc/oscillator.hpp"
#include "gfvc/ritz.hpp"
#include "gfvc/validate.hpp"

namespace gfvc::cli {

using config::ConfigError;
using config::Json;
using config::Reader;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0.000000000000";
  const double a = std::abs(v);
  if (a >= 1e-3 && a < 1e6) return fmt::format("{:.12f}", v);
  return fmt::format("{:.11e}", v);
}

namespace {

struct Common {
  std::string config_path;
  std::uint64_t seed = 0;
  std::string output;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Everything a command produces: summary lines, an optional table, and
/// the value compared against the threshold.
struct Entry {
  std::string key;
  std::string text;
  bool numeric = false;
};

struct Report {
  std::vector<Entry> summary;
  std::vector<std::string> messages;
  std::optional<Table> table;
  std::optional<std::string> failure;

  void add(const std::string& key, double v) { summary.push_back({key, format_number(v), true}); }
  void add(const std::string& key, const std::string& v) { summary.push_back({key, v, false}); }
  void count(const std::string& key, std::size_t n) {
    summary.push_back({key, std::to_string(n), true});
  }
  void check(const std::string& key, double value, std::optional<double> threshold) {
    if (threshold && !(std::abs(value) <= *threshold)) {
      failure = fmt::format("{} = {} exceeds threshold {}", key, format_number(value),
                            format_number(*threshold));
    }
  }
};

struct OutputSpec {
  std::string path;
  std::string format = "csv";
};

std::string render_csv(const Table& t) {
  std::string s;
  for (std::size_t i = 0; i < t.columns.size(); ++i) s += (i ? "," : "") + t.columns[i];
  s += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + format_number(row[i]);
    s += '\n';
  }
  return s;
}

std::string json_number(double v) { return std::isfinite(v) ? format_number(v) : "null"; }

std::string render_json(const Report& r) {
  std::string s = "{\n  \"summary\": {";
  for (std::size_t i = 0; i < r.summary.size(); ++i) {
    const Entry& e = r.summary[i];
    const bool finite = e.text != "nan" && e.text != "inf" && e.text != "-inf";
    const std::string value = e.numeric ? (finite ? e.text : "null") : Json(e.text).dump();
    s += fmt::format("{}\n    {}: {}", i ? "," : "", Json(e.key).dump(), value);
  }
  s += r.summary.empty() ? "}" : "\n  }";
  if (r.table) {
    s += ",\n  \"columns\": [";
    for (std::size_t i = 0; i < r.table->columns.size(); ++i) {
      s += (i ? ", " : "") + Json(r.table->columns[i]).dump();
    }
    s += "],\n  \"rows\": [";
    for (std::size_t k = 0; k < r.table->rows.size(); ++k) {
      s += k ? ",\n    [" : "\n    [";
      const auto& row = r.table->rows[k];
      for (std::size_t i = 0; i < row.size(); ++i) s += (i ? ", " : "") + json_number(row[i]);
      s += "]";
    }
    s += r.table->rows.empty() ? "]" : "\n  ]";
  }
  s += "\n}\n";
  return s;
}

OutputSpec read_output(const Reader& root, const Common& common) {
  OutputSpec o;
  if (auto r = root.optional_object("output")) {
    o.path = r->text("path", "");
    o.format = r->text("format", "csv");
    r->finish();
    if (o.format != "csv" && o.format != "json") {
      throw ConfigError(fmt::format("output.format: expected csv or json, got '{}'", o.format));
    }
  }
  if (!common.output.empty()) {
    o.path = common.output;
    const auto dot = o.path.rfind('.');
    if (dot != std::string::npos && o.path.substr(dot) == ".json") o.format = "json";
  }
  return o;
}

void emit(const Report& r, const OutputSpec& o, std::ostream& out) {
  for (const Entry& e : r.summary) out << e.key << ": " << e.text << '\n';
  for (const auto& m : r.messages) out << m << '\n';
  const bool has_file = !o.path.empty();
  if (!r.table && !has_file) return;
  const std::string body =
      o.format == "json" ? render_json(r) : render_csv(r.table.value_or(Table{}));
  if (!has_file) {
    out << body;
    return;
  }
  std::ofstream f(o.path, std::ios::binary);
  if (!f) throw ConfigError(fmt::format("cannot write output file '{}'", o.path));
  f << body;
  out << "wrote " << o.path << '\n';
}

std::optional<double> read_threshold(const Reader& root, std::optional<double> fallback = {}) {
  if (!root.has("threshold")) return fallback;
  return root.number("threshold");
}

QuadratureSpec read_quad(const Reader& root) {
  if (auto q = root.optional_object("quadrature")) return config::read_quadrature(*q);
  return {};
}

std::vector<double> read_grid(const Reader& root, const ProblemSpec& p) {
  if (!root.has("grid")) return default_residual_grid(p);
  const Reader g = root.object("grid");
  std::vector<double> out;
  if (g.has("points")) {
    out = g.numbers("points");
  } else {
    const int n = g.integer("count");
    const double lo = g.number("lo"), hi = g.number("hi");
    if (n < 2) throw ConfigError(fmt::format("grid.count: need at least 2 points, got {}", n));
    for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  }
  g.finish();
  return out;
}

std::vector<std::string> indexed(const std::string& name, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t j = 1; j <= n; ++j) out.push_back(fmt::format("{}_{}", name, j));
  return out;
}

/// Trajectory given analytically, or the Ritz extremal of the problem.
FunctionHandle obtain_trajectory(const Reader& root, const ProblemSpec& p, Report& report) {
  if (root.has("trajectory")) {
    std::vector<ScalarFunction> comps;
    for (const Reader& f : root.objects("trajectory"))
      comps.push_back(config::read_function(f).build());
    if (comps.size() != p.lagrangian.N) {
      throw ConfigError(
          fmt::format("trajectory: expected {} components, got {}", p.lagrangian.N, comps.size()));
    }
    return FunctionHandle(std::move(comps), p.interval);
  }
  int M = 20;
  RitzOptions opts;
  if (auto r = root.optional_object("ritz")) opts = config::read_ritz(*r, M);
  const Solution s = p.isoperimetric ? solve_isoperimetric(p, M, opts) : solve_ritz(p, M, opts);
  report.count("ritz_basis_size", static_cast<std::size_t>(M));
  report.add("ritz_converged", s.diagnostics.converged ? "true" : "false");
  report.add("ritz_el_residual_l2", s.diagnostics.el_residual_l2);
  return s.evaluator;
}

/// Top-level keys each command accepts, checked before any computation.
void check_keys(const Json& doc, const std::string& command,
                const std::vector<std::string>& allowed) {
  for (const auto& [key, value] : doc.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(fmt::format("{}: unknown key for '{}'", key, command));
    }
  }
}

Json load_root(const Common& c, bool required) {
  if (c.config_path.empty()) {
    if (required) throw ConfigError("--config is required for this command");
    return Json::object();
  }
  return config::load_file(c.config_path);
}

Report cmd_op_eval(const Reader& root) {
  const std::string op = root.text("operator");
  const config::KernelSpec ks = config::read_kernel(root.object("kernel"));
  const ParamSet P = config::read_pset(root.object("pset"));
  const FunctionHandle f({config::read_function(root.object("function")).build()}, {P.a, P.b});
  const std::vector<double> xs = root.numbers("points");
  const QuadratureSpec quad = read_quad(root);
  const double h = root.number("diff_step", default_diff_step(P));
  const Kernel kernel = ks.build({P.a, P.b});

  Report r;
  r.add("operator", op);
  r.add("kernel", kernel.describe());
  Table t{{"x", "value"}, {}};
  for (double x : xs) {
    double v = 0.0;
    if (op == "k") {
      v = k_op(kernel, P, f, x, quad)[0];
    } else if (op == "b") {
      v = b_op(kernel, P, f, x, quad)[0];
    } else if (op == "a") {
      v = a_op(kernel, P, f, x, quad, h)[0];
    } else {
      throw ConfigError(fmt::format("operator: expected k, b or a, got '{}'", op));
    }
    t.rows.push_back({x, v});
  }
  r.table = t;
  return r;
}

Report cmd_ibp(const Reader& root) {
  const std::string op = root.text("operator", "k");
  const ParamSet P = config::read_pset(root.object("pset"));
  const Kernel kernel = config::read_kernel(root.object("kernel")).build({P.a, P.b});
  const Interval iv{P.a, P.b};
  const FunctionHandle f({config::read_function(root.object("f")).build()}, iv);
  const FunctionHandle g({config::read_function(root.object("g")).build()}, iv);
  const QuadratureSpec quad = read_quad(root);
  IbpCheck c;
  std::optional<double> threshold;
  if (op == "k") {
    threshold = read_threshold(root, 1e-6);
    c = check_ibp_k(kernel, P, f, g, quad);
  } else if (op == "b") {
    threshold = read_threshold(root, 1e-5);
    c = check_ibp_b(kernel, P, f, g, quad, root.number("diff_step", default_diff_step(P)));
  } else {
    throw ConfigError(fmt::format("operator: expected k or b, got '{}'", op));
  }
  Report r;
  r.add("operator", op);
  r.add("kernel", kernel.describe());
  r.add("lhs", c.lhs);
  r.add("rhs", c.rhs);
  r.add("abs_residual", c.abs_residual);
  r.check("abs_residual", c.abs_residual, threshold);
  return r;
}

Report cmd_solve(const Reader& root) {
  const ProblemSpec p = config::read_problem(root.object("problem")).build();
  int M = 20;
  RitzOptions opts;
  if (auto rr = root.optional_object("ritz")) opts = config::read_ritz(*rr, M);
  const int points = root.integer("points", 101);
  if (points < 2) throw ConfigError(fmt::format("points: need at least 2, got {}", points));
  const auto threshold = read_threshold(root);
  const Solution s = p.isoperimetric ? solve_isoperimetric(p, M, opts) : solve_ritz(p, M, opts);

  Report r;
  const SolutionDiagnostics& d = s.diagnostics;
  r.add("basis", to_string(s.basis));
  r.count("functions_per_component", s.functions_per_component);
  r.add("functional_value", d.functional_value);
  r.add("el_residual_l2", d.el_residual_l2);
  r.add("converged", d.converged ? "true" : "false");
  r.count("iterations", static_cast<std::size_t>(d.iterations));
  r.add("gradient_norm", d.gradient_norm);
  if (d.natural_bc_residual) {
    for (std::size_t j = 0; j < d.natural_bc_residual->size(); ++j) {
      r.add(fmt::format("natural_bc_residual_{}", j + 1), (*d.natural_bc_residual)[j]);
    }
  }
  if (d.multiplier) r.add("multiplier", *d.multiplier);
  if (d.constraint_gap) r.add("constraint_gap", *d.constraint_gap);
  r.check("el_residual_l2", d.el_residual_l2, threshold);

  Table t;
  t.columns = {"t"};
  for (auto& c : indexed("y", p.lagrangian.N)) t.columns.push_back(c);
  for (int i = 0; i < points; ++i) {
    const double x = p.interval.a + p.interval.length() * i / (points - 1);
    std::vector<double> row{x};
    for (double v : s.evaluator(x)) row.push_back(v);
    t.rows.push_back(row);
  }
  r.table = t;
  return r;
}

Report cmd_residual(const Reader& root) {
  const ProblemSpec p = config::read_problem(root.object("problem")).build();
  const auto grid = read_grid(root, p);
  const QuadratureSpec quad = read_quad(root);
  const auto threshold = read_threshold(root);
  Report r;
  const FunctionHandle y = obtain_trajectory(root, p, r);
  const Residual res = root.has("diff_step")
                           ? el_residual(p, y, grid, quad, root.number("diff_step"))
                           : el_residual(p, y, grid, quad);
  r.add("residual_l2", residual_l2(res));
  r.add("residual_max", residual_max(res));
  r.check("residual_max", residual_max(res), threshold);
  Table t;
  t.columns = {"t"};
  for (auto& c : indexed("el", p.lagrangian.N)) t.columns.push_back(c);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<double> row{grid[i]};
    for (std::size_t j = 0; j < p.lagrangian.N; ++j) row.push_back(res[j][i]);
    t.rows.push_back(row);
  }
  r.table = t;
  return r;
}

TransformationSpec read_transformation(const Reader& r, std::size_t N) {
  const std::string kind = r.text("kind");
  auto component = [&](const std::string& key) {
    const int c = r.integer(key);
    if (c < 1 || static_cast<std::size_t>(c) > N) {
      throw ConfigError(
          fmt::format("{}.{}: component must be in 1..{}, got {}", r.path(), key, N, c));
    }
    return static_cast<std::size_t>(c - 1);
  };
  TransformationSpec xf;
  if (kind == "translation") {
    xf = translation(N, component("component"));
  } else if (kind == "rotation") {
    const std::size_t a = component("first");
    const std::size_t b = component("second");
    if (a == b)
      throw ConfigError(fmt::format("{}: rotation needs two distinct components", r.path()));
    xf = rotation(N, a, b);
  } else {
    throw ConfigError(
        fmt::format("{}.kind: expected translation or rotation, got '{}'", r.path(), kind));
  }
  r.finish();
  return xf;
}

Report cmd_noether(const Reader& root, const Common& common) {
  const ProblemSpec p = config::read_problem(root.object("problem")).build();
  const TransformationSpec xf = read_transformation(root.object("transformation"), p.lagrangian.N);
  const auto grid = read_grid(root, p);
  const QuadratureSpec quad = read_quad(root);
  const std::string form_name = root.text("form", "consistent");
  NoetherForm form = NoetherForm::consistent;
  if (form_name == "as_printed") {
    form = NoetherForm::as_printed;
  } else if (form_name != "consistent") {
    throw ConfigError(fmt::format("form: expected consistent or as_printed, got '{}'", form_name));
  }
  const auto eps = root.has("eps") ? root.numbers("eps") : default_eps_list();
  const int count = root.integer("subintervals", 8);
  const auto threshold = read_threshold(root);
  Report r;
  const FunctionHandle y = obtain_trajectory(root, p, r);

  const double defect =
      check_invariance(p, xf, y, eps, default_subintervals(p.interval, count, common.seed), quad);
  const auto nci = nci_residual(p, xf, y, grid, quad);
  const auto nth = noether_residual(p, xf, y, grid, quad, form);
  double nci_max = 0.0, nth_max = 0.0;
  for (double v : nci) nci_max = std::max(nci_max, std::abs(v));
  for (double v : nth) nth_max = std::max(nth_max, std::abs(v));

  r.add("form", form_name);
  r.add("invariance_defect", defect);
  r.add("nci_max", nci_max);
  r.add("noether_max", nth_max);
  r.check("noether_max", nth_max, threshold);
  Table t{{"t", "nci", "noether"}, {}};
  for (std::size_t i = 0; i < grid.size(); ++i) t.rows.push_back({grid[i], nci[i], nth[i]});
  r.table = t;
  return r;
}

Report cmd_constant_of_motion(const Reader& root) {
  const ProblemSpec p = config::read_problem(root.object("problem")).build();
  const auto grid = read_grid(root, p);
  const QuadratureSpec quad = read_quad(root);
  const std::string mode_name = root.text("mode", "derived_one_minus_alpha");
  OrderMode mode = OrderMode::derived_one_minus_alpha;
  if (mode_name == "as_printed_alpha") {
    mode = OrderMode::as_printed_alpha;
  } else if (mode_name != "derived_one_minus_alpha") {
    throw ConfigError(fmt::format(
        "mode: expected derived_one_minus_alpha or as_printed_alpha, got '{}'", mode_name));
  }
  const auto threshold = read_threshold(root);
  Report r;
  const FunctionHandle y = obtain_trajectory(root, p, r);
  const ConstantOfMotion c = constant_of_motion(p, y, grid, mode, quad);
  double mean = 0.0;
  for (double v : c.values) mean += v / static_cast<double>(c.values.size());
  r.add("mode", mode_name);
  r.add("mean", mean);
  r.add("flatness", c.flatness);
  r.check("flatness", c.flatness, threshold);
  Table t{{"t", "value"}, {}};
  for (std::size_t i = 0; i < grid.size(); ++i) t.rows.push_back({grid[i], c.values[i]});
  r.table = t;
  return r;
}

struct DemoFlags {
  std::optional<double> gamma, omega, mass, threshold;
  std::optional<int> M, points;
  std::optional<std::string> potential;
};

std::array<double, 3> triple(const Reader& r, const std::string& key,
                             std::array<double, 3> fallback) {
  if (!r.has(key)) return fallback;
  const auto v = r.numbers(key);
  if (v.size() != 3)
    throw ConfigError(fmt::format("{}.{}: expected 3 values, got {}", r.path(), key, v.size()));
  return {v[0], v[1], v[2]};
}

Report cmd_demo(const Reader& root, const DemoFlags& flags) {
  OscillatorConfig cfg;
  double gamma = root.number("gamma", 0.1);
  double omega = root.number("omega", 2.0);
  cfg.mass = root.number("mass", 1.0);
  std::string potential = root.text("potential", "harmonic");
  int M = 20;
  RitzOptions opts;
  if (auto rr = root.optional_object("ritz")) opts = config::read_ritz(*rr, M);
  M = root.integer("M", M);
  int points = root.integer("points", 41);
  std::optional<double> threshold = read_threshold(root, 1e-3);
  if (auto iv = root.optional_object("interval")) {
    cfg.interval = {iv->number("a"), iv->number("b")};
    iv->finish();
  }
  cfg.y_a = triple(root, "y_a", cfg.y_a);
  cfg.y_b = triple(root, "y_b", cfg.y_b);
  cfg.potential.gravity = root.number("gravity", cfg.potential.gravity);

  if (flags.gamma) gamma = *flags.gamma;
  if (flags.omega) omega = *flags.omega;
  if (flags.mass) cfg.mass = *flags.mass;
  if (flags.potential) potential = *flags.potential;
  if (flags.M) M = *flags.M;
  if (flags.points) points = *flags.points;
  if (flags.threshold) threshold = *flags.threshold;

  try {
    cfg.potential.kind = potential_kind_from_string(potential);
  } catch (const UsageError& e) {
    throw ConfigError(fmt::format("potential: {}", e.what()));
  }
  if (cfg.potential.kind == PotentialKind::custom) {
    throw ConfigError("potential: custom potentials need code, use free, harmonic or gravity_y3");
  }
  cfg.kernel_coefficient = -gamma;
  cfg.potential.stiffness = cfg.mass * omega * omega;

  const DemoResult res = run_oscillator_demo(cfg, M, points, opts);
  Report r;
  r.add("gamma", gamma);
  r.add("omega", omega);
  r.add("kernel_coefficient", cfg.kernel_coefficient);
  r.add("potential", to_string(cfg.potential.kind));
  r.add("converged", res.solution.diagnostics.converged ? "true" : "false");
  r.add("linf_error", res.linf_error);
  r.add("max_el_residual", res.max_el_residual);
  if (std::isfinite(res.linf_error)) r.check("linf_error", res.linf_error, threshold);

  Table t;
  t.columns = {"t"};
  for (const char* name : {"y", "analytic", "el_residual"}) {
    for (auto& c : indexed(name, 3)) t.columns.push_back(c);
  }
  t.columns.push_back("momentum_residual");
  t.columns.push_back("rotation_residual");
  for (const DemoRow& row : res.rows) {
    std::vector<double> v{row.t};
    v.insert(v.end(), row.y.begin(), row.y.end());
    v.insert(v.end(), row.analytic.begin(), row.analytic.end());
    v.insert(v.end(), row.el_residual.begin(), row.el_residual.end());
    v.push_back(row.momentum_residual);
    v.push_back(row.rotation_residual);
    t.rows.push_back(v);
  }
  r.table = t;
  return r;
}

Report cmd_validate(const Reader& root, const Common& common) {
  const config::ProblemDescription desc = config::read_problem(root.object("problem"));
  Report r;
  ProblemSpec p;
  try {
    p = desc.build();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    r.count("findings", 1);
    r.messages.push_back(fmt::format("finding: structure: {}", e.what()));
    r.failure = "problem has 1 finding";
    return r;
  }
  const ValidationReport v = validate_problem(p, common.seed);
  r.count("findings", v.findings.size());
  for (const auto& f : v.findings) r.messages.push_back("finding: " + f);
  for (const auto& n : v.notes) r.messages.push_back("note: " + n);
  if (!v.ok()) r.failure = fmt::format("problem has {} finding(s)", v.findings.size());
  return r;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized fractional variational calculus toolkit", "gfvc"};
  app.require_subcommand(1);
  Common common;
  DemoFlags demo;

  auto with_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", common.config_path, "JSON configuration file");
    if (config_required) opt->required();
    sub->add_option("--seed", common.seed, "Seed for randomized sampling");
    sub->add_option("--output", common.output, "Output file (overrides output.path)");
    return sub;
  };

  CLI::App* op = app.add_subcommand("op", "Operator evaluation");
  op->require_subcommand(1);
  CLI::App* op_eval =
      with_common(op->add_subcommand("eval", "Evaluate K-, B- or A-op at points"), true);
  CLI::App* ibp =
      with_common(app.add_subcommand("ibp-check", "Integration-by-parts identity"), true);
  CLI::App* solve =
      with_common(app.add_subcommand("solve", "Ritz solve of a variational problem"), true);
  CLI::App* residual = with_common(app.add_subcommand("residual", "Euler-Lagrange residual"), true);
  CLI::App* noether =
      with_common(app.add_subcommand("noether", "Invariance and Noether identity"), true);
  CLI::App* com =
      with_common(app.add_subcommand("constant-of-motion", "Constant of motion flatness"), true);
  CLI::App* demo_cmd = app.add_subcommand("demo", "Demonstrations");
  demo_cmd->require_subcommand(1);
  CLI::App* osc =
      with_common(demo_cmd->add_subcommand("oscillator", "Damped oscillator demo"), false);
  osc->add_option("--gamma", demo.gamma, "Damping rate (kernel coefficient is -gamma)");
  osc->add_option("--omega", demo.omega, "Natural frequency");
  osc->add_option("--mass", demo.mass, "Particle mass");
  osc->add_option("--potential", demo.potential, "free, harmonic or gravity_y3");
  osc->add_option("-M,--basis-size", demo.M, "Ritz functions per component");
  osc->add_option("--points", demo.points, "Output rows");
  osc->add_option("--threshold", demo.threshold,
                  "Maximum L-infinity error against the closed form");
  CLI::App* validate =
      with_common(app.add_subcommand("validate", "Check a problem description"), true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    const Json doc = load_root(common, !osc->parsed());
    const Reader root(doc, "");
    Report report;
    const std::vector<std::string> trajectory_keys{"problem",    "trajectory", "ritz",  "grid",
                                                   "quadrature", "threshold",  "output"};
    auto with = [&](std::vector<std::string> keys, std::initializer_list<std::string> extra) {
      keys.insert(keys.end(), extra);
      return keys;
    };
    if (op_eval->parsed()) {
      check_keys(doc, "op eval",
                 {"operator", "kernel", "pset", "function", "points", "quadrature", "diff_step",
                  "output"});
      report = cmd_op_eval(root);
    } else if (ibp->parsed()) {
      check_keys(doc, "ibp-check",
                 {"operator", "kernel", "pset", "f", "g", "quadrature", "diff_step", "threshold",
                  "output"});
      report = cmd_ibp(root);
    } else if (solve->parsed()) {
      check_keys(doc, "solve", {"problem", "ritz", "points", "threshold", "output"});
      report = cmd_solve(root);
    } else if (residual->parsed()) {
      check_keys(doc, "residual", with(trajectory_keys, {"diff_step"}));
      report = cmd_residual(root);
    } else if (noether->parsed()) {
      check_keys(doc, "noether",
                 with(trajectory_keys, {"transformation", "form", "eps", "subintervals"}));
      report = cmd_noether(root, common);
    } else if (com->parsed()) {
      check_keys(doc, "constant-of-motion", with(trajectory_keys, {"mode"}));
      report = cmd_constant_of_motion(root);
    } else if (osc->parsed()) {
      check_keys(doc, "demo oscillator",
                 {"gamma", "omega", "mass", "potential", "gravity", "ritz", "M", "points",
                  "threshold", "interval", "y_a", "y_b", "output"});
      report = cmd_demo(root, demo);
    } else if (validate->parsed()) {
      check_keys(doc, "validate", {"problem", "output"});
      report = cmd_validate(root, common);
    }
    const OutputSpec output = read_output(root, common);
    root.finish();
    emit(report, output, out);
    if (report.failure) {
      err << "FAIL: " << *report.failure << '\n';
      return 2;
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return 1;
}

}  // namespace gfvc::cli
