#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "gfvc/cli.hpp"
#include "gfvc/config.hpp"
#include "gfvc/functional.hpp"

using namespace gfvc;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "gfvc_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string write_config(const std::string& name, const std::string& text) {
  const fs::path p = scratch_dir() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "gfvc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

/// Value printed on a "key: value" summary line.
double summary_value(const std::string& out, const std::string& key) {
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + ": ", 0) == 0) return std::stod(line.substr(key.size() + 2));
  }
  FAIL("missing summary line " << key);
  return NAN;
}

const char* kIbpConfig = R"({
  "operator": "k",
  "kernel": {"kind": "riemann_liouville", "order": 0.5},
  "pset": {"a": 0, "b": 1, "p": 1, "q": 0},
  "f": {"kind": "polynomial", "coefficients": [0, 1]},
  "g": {"kind": "polynomial", "coefficients": [0, 0, 1]}
})";

}  // namespace

TEST_CASE("number formatting") {
  CHECK(cli::format_number(0.0) == "0.000000000000");
  CHECK(cli::format_number(-0.0) == "0.000000000000");
  CHECK(cli::format_number(1.5) == "1.500000000000");
  CHECK(cli::format_number(-0.001) == "-0.001000000000");
  CHECK(cli::format_number(123456.0) == "123456.000000000000");
  CHECK(cli::format_number(1e6) == "1.00000000000e+06");
  CHECK(cli::format_number(2.5e-4) == "2.50000000000e-04");
  CHECK(cli::format_number(NAN) == "nan");
}

TEST_CASE("op eval of the zero function prints zero") {
  const auto cfg = write_config("op_zero.json", R"({
    "operator": "k",
    "kernel": {"kind": "riemann_liouville", "order": 0.5},
    "pset": {"a": 0, "b": 1, "p": 1, "q": 0},
    "function": {"kind": "polynomial", "coefficients": [0]},
    "points": [0.5]
  })");
  const RunResult r = run({"op", "eval", "--config", cfg});
  CHECK(r.code == 0);
  CHECK(r.out.find("0.500000000000,0.000000000000") != std::string::npos);
}

TEST_CASE("op eval matches the library") {
  const auto cfg = write_config("op_b.json", R"({
    "operator": "b",
    "kernel": {"kind": "riemann_liouville", "order": 0.5},
    "pset": {"a": 0, "b": 1, "p": 1, "q": 0},
    "function": {"kind": "polynomial", "coefficients": [0, 1]},
    "points": [0.25],
    "output": {"format": "json"}
  })");
  const RunResult r = run({"op", "eval", "--config", cfg});
  REQUIRE(r.code == 0);
  const auto j = config::parse_text(r.out.substr(r.out.find('{')), "stdout");
  CHECK(j["rows"][0][1].get<double>() ==
        doctest::Approx(std::sqrt(0.25) / std::tgamma(1.5)).epsilon(1e-9));
}

TEST_CASE("ibp-check exits 0 below the threshold and 2 above it") {
  const RunResult r = run({"ibp-check", "--config", write_config("ibp.json", kIbpConfig)});
  CHECK(r.code == 0);
  CHECK(summary_value(r.out, "abs_residual") <= 1e-6);

  std::string strict = kIbpConfig;
  strict.insert(strict.rfind('}'), R"(, "threshold": 1e-20)");
  const RunResult f = run({"ibp-check", "--config", write_config("ibp_strict.json", strict)});
  CHECK(f.code == 2);
  CHECK(f.err.find("abs_residual") != std::string::npos);
}

TEST_CASE("config errors exit 1 with the offending field") {
  std::string typo = kIbpConfig;
  typo.insert(typo.rfind('}'), R"(, "treshold": 1)");
  RunResult r = run({"ibp-check", "--config", write_config("typo.json", typo)});
  CHECK(r.code == 1);
  CHECK(r.err.find("treshold") != std::string::npos);

  r = run({"ibp-check", "--config", write_config("syntax.json", "{\n  \"operator\": \"k\",,\n}")});
  CHECK(r.code == 1);
  CHECK(r.err.find("syntax.json:2:") != std::string::npos);

  r = run({"ibp-check", "--config",
           write_config("nested.json", R"({"operator": "k", "kernel": {"kind": "riemann_liouville",
             "order": 0.5, "ordre": 1}, "pset": {"a": 0, "b": 1, "p": 1, "q": 0},
             "f": {"kind": "polynomial", "coefficients": [1]},
             "g": {"kind": "polynomial", "coefficients": [1]}})")});
  CHECK(r.code == 1);
  CHECK(r.err.find("kernel.ordre") != std::string::npos);

  r = run({"ibp-check", "--config",
           write_config("type.json", R"({"operator": "k", "kernel": {"kind": "riemann_liouville",
             "order": "half"}, "pset": {"a": 0, "b": 1, "p": 1, "q": 0},
             "f": {"kind": "polynomial", "coefficients": [1]},
             "g": {"kind": "polynomial", "coefficients": [1]}})")});
  CHECK(r.code == 1);
  CHECK(r.err.find("kernel.order: expected a number") != std::string::npos);

  CHECK(run({"solve"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"ibp-check", "--config", "/nonexistent/x.json"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("demo oscillator writes the CSV and reports the closed-form error") {
  const std::string csv = (scratch_dir() / "osc.csv").string();
  const RunResult r =
      run({"demo", "oscillator", "--gamma", "0.1", "--omega", "2", "--output", csv});
  CHECK(r.code == 0);
  CHECK(summary_value(r.out, "linf_error") <= 1e-3);
  const std::string body = slurp(csv);
  CHECK(body.rfind("t,y_1,y_2,y_3,analytic_1,analytic_2,analytic_3,el_residual_1,el_residual_2,"
                   "el_residual_3,momentum_residual,rotation_residual\n",
                   0) == 0);
  CHECK(body.find('\r') == std::string::npos);
  CHECK(std::count(body.begin(), body.end(), '\n') == 42);
}

TEST_CASE("solve, residual, noether, constant-of-motion and validate") {
  const std::string problem = R"("problem": {"lagrangian": "free_particle",
      "alpha_kernel": {"kind": "exponential", "coefficient": 0.3},
      "interval": {"a": 0, "b": 1}, "y_a": [0], "y_b": [1]})";
  RunResult r = run(
      {"solve", "--config", write_config("solve.json", "{" + problem + R"(, "ritz": {"M": 10}})")});
  CHECK(r.code == 0);
  CHECK(summary_value(r.out, "el_residual_l2") <= 1e-4);

  r = run({"residual", "--config",
           write_config("residual.json",
                        "{" + problem +
                            R"(, "trajectory": [{"kind": "polynomial", "coefficients": [0, 1]}],
                               "threshold": 0.1})")});
  CHECK(r.code == 2);  // the straight line is not the weighted extremal: residual 0.3 k

  r = run(
      {"noether", "--config", write_config("noether.json", "{" + problem + R"(, "ritz": {"M": 12},
              "transformation": {"kind": "translation", "component": 1}, "threshold": 1e-4})")});
  CHECK(r.code == 0);
  CHECK(summary_value(r.out, "invariance_defect") <= 1e-6);

  const std::string caputo = R"("problem": {"lagrangian": "example2_quadratic",
      "beta": [{"kernel": {"kind": "riemann_liouville", "order": 0.5},
                "pset": {"a": 0, "b": 1, "p": 1, "q": 0}}],
      "interval": {"a": 0, "b": 1}, "y_a": [0], "y_b": [1]})";
  r = run({"constant-of-motion", "--config", write_config("com.json", "{" + caputo + R"(,
              "trajectory": [{"kind": "polynomial", "coefficients": [0, 0, 1]}]})")});
  CHECK(r.code == 0);
  CHECK(summary_value(r.out, "flatness") >= 0.05);

  r = run({"validate", "--config", write_config("validate.json", "{" + caputo + "}")});
  CHECK(r.code == 0);
  CHECK(summary_value(r.out, "findings") == 0.0);
}

TEST_CASE("seeded runs are byte-identical") {
  const auto cfg = write_config("det.json", R"({
    "problem": {"lagrangian": "harmonic", "N": 2, "stiffness": 2,
      "alpha_kernel": {"kind": "exponential", "coefficient": 0.3},
      "interval": {"a": 0, "b": 1}, "y_a": [1, 0], "y_b": [0, 1]},
    "ritz": {"M": 6},
    "transformation": {"kind": "rotation", "first": 1, "second": 2},
    "grid": {"count": 7, "lo": 0.1, "hi": 0.9}
  })");
  const std::string a = (scratch_dir() / "det_a.json").string();
  const std::string b = (scratch_dir() / "det_b.json").string();
  const RunResult ra = run({"noether", "--config", cfg, "--seed", "17", "--output", a});
  const RunResult rb = run({"noether", "--config", cfg, "--seed", "17", "--output", b});
  REQUIRE(ra.code == 0);
  REQUIRE(rb.code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());
}

TEST_CASE("problem descriptions round-trip through the config format") {
  config::ProblemDescription d;
  d.lagrangian = "harmonic";
  d.N = 2;
  d.mass = 1.3;
  d.stiffness = 0.7;
  d.alpha_kernel = {KernelKind::exponential, 0.5, -0.23};
  d.beta = {{{KernelKind::riemann_liouville, 0.35}, ParamSet{0, 1, 0.6, 0.4}}};
  d.gamma = {{{KernelKind::exponential, 0.5, 0.8}, ParamSet{0, 1, 0.2, 0.8}}};
  d.interval = {0.0, 1.0};
  d.y_a = std::vector<double>{0.1, -0.2};
  d.y_b = {1.0, 0.5};

  const std::string text = config::to_json(d).dump(2);
  const config::Json doc = config::parse_text(text, "roundtrip");
  const config::ProblemDescription back = config::read_problem(config::Reader(doc, "problem"));
  CHECK(config::to_json(back).dump() == config::to_json(d).dump());

  const ProblemSpec p1 = d.build();
  const ProblemSpec p2 = back.build();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int probe = 0; probe < 10; ++probe) {
    std::vector<ScalarFunction> comps;
    for (int j = 0; j < 2; ++j) {
      config::FunctionSpec f;
      f.kind = config::FunctionSpec::Kind::polynomial;
      f.coefficients = {u(rng), u(rng), u(rng), u(rng)};
      comps.push_back(f.build());
    }
    const FunctionHandle y(comps, d.interval);
    const double j1 = evaluate_functional(p1, y, {});
    const double j2 = evaluate_functional(p2, y, {});
    CHECK(std::abs(j1 - j2) <= 1e-12 * std::max(1.0, std::abs(j1)));
  }
}
