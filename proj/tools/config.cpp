#include "config.hpp"

#include <rbridge/errors.hpp>
#include <rbridge/io.hpp>

#include <fmt/format.h>

#include <cmath>
#include <initializer_list>
#include <set>

namespace rbridge::cli {
namespace {

using nlohmann::json;

void expect_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(fmt::format("{}: expected an object", where));
}

void expect_keys(const json& j, std::initializer_list<const char*> allowed,
                 const std::string& where) {
  expect_object(j, where);
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : j.items())
    if (!ok.count(item.key()))
      throw ConfigError(fmt::format("{}: unknown key '{}'", where, item.key()));
}

std::string at(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

double number(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_number()) throw ConfigError(fmt::format("{}: expected a number", at(where, key)));
  return j.get<double>();
}

long long integer(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_number_integer())
    throw ConfigError(fmt::format("{}: expected an integer", at(where, key)));
  return j.get<long long>();
}

int small_int(const json& j, const std::string& key, const std::string& where, long long lo) {
  const long long v = integer(j, key, where);
  if (v < lo || v > 1000000000)
    throw ConfigError(fmt::format("{}: {} is out of range (minimum {})", at(where, key), v, lo));
  return static_cast<int>(v);
}

bool boolean(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_boolean()) throw ConfigError(fmt::format("{}: expected true or false", at(where, key)));
  return j.get<bool>();
}

std::string string(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_string()) throw ConfigError(fmt::format("{}: expected a string", at(where, key)));
  return j.get<std::string>();
}

std::vector<double> numbers(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_array() || j.empty())
    throw ConfigError(fmt::format("{}: expected a nonempty array of numbers", at(where, key)));
  std::vector<double> out;
  for (const auto& e : j) out.push_back(number(e, key, where));
  return out;
}

std::vector<std::string> strings(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_array()) throw ConfigError(fmt::format("{}: expected an array", at(where, key)));
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(string(e, key, where));
  return out;
}

std::filesystem::path existing(const json& j, const std::string& key, const std::string& where,
                               const std::filesystem::path& base) {
  std::filesystem::path p = string(j, key, where);
  if (p.is_relative()) p = base / p;
  if (!std::filesystem::exists(p))
    throw ConfigError(fmt::format("{}: file '{}' does not exist", at(where, key), p.string()));
  return p;
}

ScaleConvention scale(const json& j, const std::string& where) {
  const std::string s = string(j, "scale", where);
  if (s == "population") return ScaleConvention::population;
  if (s == "sample") return ScaleConvention::sample;
  throw ConfigError(fmt::format("{}: scale must be 'population' or 'sample'", at(where, "scale")));
}

CvNormalization normalization(const json& j, const std::string& where) {
  const std::string s = string(j, "normalization", where);
  if (s == "full_n") return CvNormalization::full_n;
  if (s == "fold_n") return CvNormalization::fold_n;
  throw ConfigError(
      fmt::format("{}: normalization must be 'full_n' or 'fold_n'", at(where, "normalization")));
}

void read_data(const json& s, const std::string& where, const std::filesystem::path& base,
               DataConfig& out) {
  if (!s.contains("data")) throw ConfigError(fmt::format("{}: 'data' is required", where));
  out.path = existing(s["data"], "data", where, base);
  if (!s.contains("response")) throw ConfigError(fmt::format("{}: 'response' is required", where));
  out.response = string(s["response"], "response", where);
  if (s.contains("standardize")) out.standardize = boolean(s["standardize"], "standardize", where);
  if (s.contains("scale")) out.scale = scale(s["scale"], where);
}

SolverOptions read_solver(const json& s, const std::string& where) {
  expect_keys(s, {"eta", "max_iter", "init_lambda"}, where);
  SolverOptions o;
  if (s.contains("eta")) o.eta = number(s["eta"], "eta", where);
  if (s.contains("max_iter")) o.max_iter = small_int(s["max_iter"], "max_iter", where, 1);
  if (s.contains("init_lambda")) o.init = RidgeInit{number(s["init_lambda"], "init_lambda", where)};
  try {
    o.validate();
  } catch (const std::exception& e) {
    throw ConfigError(fmt::format("{}: {}", where, e.what()));
  }
  return o;
}

CdOptions read_cd(const json& s, const std::string& where) {
  expect_keys(s, {"tol", "max_sweeps"}, where);
  CdOptions o;
  if (s.contains("tol")) o.tol = number(s["tol"], "tol", where);
  if (s.contains("max_sweeps")) o.max_sweeps = small_int(s["max_sweeps"], "max_sweeps", where, 1);
  try {
    o.validate();
  } catch (const std::exception& e) {
    throw ConfigError(fmt::format("{}: {}", where, e.what()));
  }
  return o;
}

std::vector<double> positive(std::vector<double> v, const std::string& what) {
  for (double x : v)
    if (!(x > 0.0)) throw ConfigError(fmt::format("{}: entries must be > 0, got {}", what, x));
  return v;
}

TuningOptions read_tuning(const json& s, const std::string& where) {
  expect_keys(s,
              {"K", "n_lambda", "qs", "enet_alphas", "scad_a", "normalization", "fixed_lambda",
               "fixed_q", "solver", "cd"},
              where);
  TuningOptions t;
  if (s.contains("K")) t.K = small_int(s["K"], "K", where, 2);
  if (s.contains("n_lambda")) t.n_lambda = small_int(s["n_lambda"], "n_lambda", where, 2);
  if (s.contains("qs")) t.qs = positive(numbers(s["qs"], "qs", where), at(where, "qs"));
  if (s.contains("enet_alphas"))
    t.enet_alphas = positive(numbers(s["enet_alphas"], "enet_alphas", where),
                             at(where, "enet_alphas"));
  if (s.contains("scad_a")) t.scad_a = number(s["scad_a"], "scad_a", where);
  if (s.contains("normalization")) t.normalization = normalization(s["normalization"], where);
  if (s.contains("fixed_lambda")) t.fixed_lambda = number(s["fixed_lambda"], "fixed_lambda", where);
  if (s.contains("fixed_q")) t.fixed_q = number(s["fixed_q"], "fixed_q", where);
  if (s.contains("solver")) t.solver = read_solver(s["solver"], at(where, "solver"));
  if (s.contains("cd")) t.cd = read_cd(s["cd"], at(where, "cd"));
  if (t.fixed_lambda && !(*t.fixed_lambda >= 0.0))
    throw ConfigError(fmt::format("{}: fixed_lambda must be >= 0", where));
  return t;
}

void parse_fit(const json& s, const std::filesystem::path& base, FitConfig& c) {
  const std::string w = "fit";
  expect_keys(s,
              {"data", "response", "standardize", "scale", "estimator", "lambda", "q", "alpha",
               "a", "restriction", "support", "solver", "cd"},
              w);
  read_data(s, w, base, c.data);
  if (s.contains("estimator")) {
    try {
      c.estimator = arm_kind_from_string(string(s["estimator"], "estimator", w));
    } catch (const InvalidArgument& e) {
      throw ConfigError(fmt::format("fit.estimator: {}", e.what()));
    }
  }
  if (s.contains("lambda")) c.lambda = number(s["lambda"], "lambda", w);
  if (s.contains("q")) c.q = number(s["q"], "q", w);
  if (s.contains("alpha")) c.alpha = number(s["alpha"], "alpha", w);
  if (s.contains("a")) c.a = number(s["a"], "a", w);
  if (s.contains("restriction")) c.restriction = existing(s["restriction"], "restriction", w, base);
  if (s.contains("support")) {
    if (!s["support"].is_array()) throw ConfigError("fit.support: expected an array");
    for (const auto& e : s["support"]) {
      const long long j = integer(e, "support", w);
      if (j < 1) throw ConfigError("fit.support: indices are 1-based");
      c.support.push_back(static_cast<Index>(j - 1));
    }
  }
  if (s.contains("solver")) c.solver = read_solver(s["solver"], "fit.solver");
  if (s.contains("cd")) c.cd = read_cd(s["cd"], "fit.cd");
  if (c.estimator == ArmKind::rbridge && !c.restriction)
    throw ConfigError("fit: estimator 'rbridge' needs a restriction");
  if (c.estimator != ArmKind::rbridge && c.restriction)
    throw ConfigError("fit: a restriction is only used by the 'rbridge' estimator");
  if (c.estimator == ArmKind::oracle && c.support.empty())
    throw ConfigError("fit: estimator 'oracle' needs a support");
}

void parse_cv(const json& s, const std::filesystem::path& base, CvConfig& c) {
  const std::string w = "cv";
  expect_keys(s,
              {"data", "response", "standardize", "scale", "restriction", "lambdas", "n_lambda",
               "qs", "K", "normalization", "solver"},
              w);
  read_data(s, w, base, c.data);
  if (s.contains("restriction")) c.restriction = existing(s["restriction"], "restriction", w, base);
  if (s.contains("lambdas")) {
    const auto l = positive(numbers(s["lambdas"], "lambdas", w), "cv.lambdas");
    c.lambdas = Eigen::Map<const Vector>(l.data(), static_cast<Index>(l.size()));
  }
  if (s.contains("n_lambda")) c.n_lambda = small_int(s["n_lambda"], "n_lambda", w, 2);
  if (s.contains("qs")) c.qs = positive(numbers(s["qs"], "qs", w), "cv.qs");
  if (s.contains("K")) c.K = small_int(s["K"], "K", w, 2);
  if (s.contains("normalization")) c.normalization = normalization(s["normalization"], w);
  if (s.contains("solver")) c.solver = read_solver(s["solver"], "cv.solver");
}

void parse_simulate(const json& s, SimulateConfig& c) {
  const std::string w = "simulate";
  expect_keys(s,
              {"scenario", "n", "p", "sigma", "rho", "nreps", "arms", "tuning", "threads",
               "raw_me"},
              w);
  if (!s.contains("scenario")) throw ConfigError("simulate: 'scenario' is required (ex1 or ex2)");
  const std::string id = string(s["scenario"], "scenario", w);
  if (id == "ex1") {
    c.example = 1;
  } else if (id == "ex2") {
    c.example = 2;
  } else {
    throw ConfigError(fmt::format("simulate.scenario: unknown scenario '{}' (ex1 or ex2)", id));
  }
  if (s.contains("n")) c.n = small_int(s["n"], "n", w, 4);
  if (s.contains("p")) c.p = small_int(s["p"], "p", w, 41);
  if (s.contains("sigma")) c.sigma = number(s["sigma"], "sigma", w);
  if (s.contains("rho")) c.rho = number(s["rho"], "rho", w);
  if (s.contains("nreps")) c.nreps = small_int(s["nreps"], "nreps", w, 1);
  if (s.contains("arms")) c.arms = strings(s["arms"], "arms", w);
  if (s.contains("tuning")) c.tuning = read_tuning(s["tuning"], "simulate.tuning");
  if (s.contains("threads")) c.threads = small_int(s["threads"], "threads", w, 1);
  if (s.contains("raw_me")) c.raw_me = boolean(s["raw_me"], "raw_me", w);
  if (!(c.sigma >= 0.0)) throw ConfigError("simulate.sigma must be >= 0");
  if (!(std::abs(c.rho) < 1.0)) throw ConfigError("simulate.rho must satisfy |rho| < 1");
}

void parse_analyze(const json& s, const std::filesystem::path& base, AnalyzeConfig& c) {
  const std::string w = "analyze";
  expect_keys(s, {"data", "response", "standardize", "scale", "priors", "nreps", "arms", "tuning"},
              w);
  read_data(s, w, base, c.data);
  if (!c.data.standardize)
    throw ConfigError("analyze: splits are always standardized on the training half");
  if (s.contains("priors")) {
    if (!s["priors"].is_array()) throw ConfigError("analyze.priors: expected an array of paths");
    for (const auto& e : s["priors"]) c.priors.push_back(existing(e, "priors", w, base));
  }
  if (s.contains("nreps")) c.nreps = small_int(s["nreps"], "nreps", w, 1);
  if (s.contains("arms")) c.arms = strings(s["arms"], "arms", w);
  if (s.contains("tuning")) c.tuning = read_tuning(s["tuning"], "analyze.tuning");
}

void parse_check(const json& s, CheckConfig& c) {
  const std::string w = "check";
  expect_keys(s,
              {"check", "draws", "n", "p", "sigma", "lambda", "q", "rho", "ns",
               "lambda_coefficient", "lambda_exponent", "nreps", "restriction_case", "instances"},
              w);
  if (!s.contains("check")) throw ConfigError("check: 'check' is required");
  c.check = string(s["check"], "check", w);
  if (c.check != "mse_formula" && c.check != "consistency" && c.check != "oracle_equivalence")
    throw ConfigError(fmt::format(
        "check.check: unknown check '{}' (mse_formula, consistency, oracle_equivalence)", c.check));
  if (s.contains("draws")) c.draws = small_int(s["draws"], "draws", w, 2);
  if (s.contains("n")) c.n = small_int(s["n"], "n", w, 2);
  if (s.contains("p")) c.p = small_int(s["p"], "p", w, 2);
  if (s.contains("sigma")) c.sigma = number(s["sigma"], "sigma", w);
  if (s.contains("lambda")) c.lambda = number(s["lambda"], "lambda", w);
  if (s.contains("q")) c.q = number(s["q"], "q", w);
  if (s.contains("rho")) c.rho = number(s["rho"], "rho", w);
  if (s.contains("ns")) {
    c.ns.clear();
    for (double v : numbers(s["ns"], "ns", w)) {
      if (v != std::floor(v) || v < 2) throw ConfigError("check.ns: entries must be integers >= 2");
      c.ns.push_back(static_cast<Index>(v));
    }
  }
  if (s.contains("lambda_coefficient"))
    c.lambda_coefficient = number(s["lambda_coefficient"], "lambda_coefficient", w);
  if (s.contains("lambda_exponent"))
    c.lambda_exponent = number(s["lambda_exponent"], "lambda_exponent", w);
  if (s.contains("nreps")) c.nreps = small_int(s["nreps"], "nreps", w, 1);
  if (s.contains("restriction_case"))
    c.restriction_case = small_int(s["restriction_case"], "restriction_case", w, 1);
  if (s.contains("instances")) c.instances = small_int(s["instances"], "instances", w, 1);
}

}  // namespace

json load_config_tree(const std::optional<std::filesystem::path>& path) {
  if (!path) return json::object();
  const std::string text = read_text_file(*path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("{}: malformed JSON: {}", path->string(), e.what()));
  }
}

RunConfig parse_config(const json& tree, const std::string& command,
                       const std::filesystem::path& base_dir) {
  expect_keys(tree,
              {"schema_version", "seed", "output_dir", "fit", "cv", "simulate", "analyze", "check"},
              "config");
  RunConfig c;
  c.command = command;
  if (!tree.contains("schema_version")) throw ConfigError("config: 'schema_version' is required");
  c.schema_version = small_int(tree["schema_version"], "schema_version", "config", 1);
  if (c.schema_version != kSchemaVersion)
    throw ConfigError(fmt::format("config: schema_version {} is not supported (expected {})",
                                  c.schema_version, kSchemaVersion));
  if (!tree.contains("seed"))
    throw ConfigError("config: 'seed' is required (set it in the file or pass --seed)");
  if (!tree["seed"].is_number_unsigned() &&
      !(tree["seed"].is_number_integer() && tree["seed"].get<long long>() >= 0))
    throw ConfigError("config.seed: expected a non-negative integer");
  c.seed = tree["seed"].get<std::uint64_t>();
  if (tree.contains("output_dir")) {
    c.output_dir = string(tree["output_dir"], "output_dir", "config");
    if (c.output_dir.is_relative()) c.output_dir = base_dir / c.output_dir;
  }

  const json empty = json::object();
  const json& section = tree.contains(command) ? tree[command] : empty;
  if (command == "fit") {
    parse_fit(section, base_dir, c.fit);
  } else if (command == "cv") {
    parse_cv(section, base_dir, c.cv);
  } else if (command == "simulate") {
    parse_simulate(section, c.simulate);
  } else if (command == "analyze") {
    parse_analyze(section, base_dir, c.analyze);
  } else if (command == "check") {
    parse_check(section, c.check);
  } else {
    throw ConfigError(fmt::format("unknown command '{}'", command));
  }
  return c;
}

}  // namespace rbridge::cli
