#include "commands.hpp"
#include "config.hpp"

#include <rbridge/errors.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>

#include <iostream>
#include <map>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rbridge::cli;

// Flag values that override the matching config entry when given.
struct Overrides {
  std::map<std::string, double> numbers;
  std::map<std::string, long long> integers;
  std::map<std::string, std::string> strings;
  std::map<std::string, std::string> paths;
  std::vector<std::string> priors;
  bool no_standardize = false;
};

template <typename T>
void add(CLI::App* app, const std::string& flag, const std::string& key, std::map<std::string, T>& dst,
         const std::string& help) {
  app->add_option_function<T>(flag, [&dst, key](const T& v) { dst[key] = v; }, help);
}

void apply(json& tree, const std::string& section, const Overrides& o) {
  if (!tree.contains(section)) tree[section] = json::object();
  json& s = tree[section];
  for (const auto& [k, v] : o.numbers) s[k] = v;
  for (const auto& [k, v] : o.integers) s[k] = v;
  for (const auto& [k, v] : o.strings) s[k] = v;
  for (const auto& [k, v] : o.paths) s[k] = fs::absolute(v).string();
  if (!o.priors.empty()) {
    s["priors"] = json::array();
    for (const auto& p : o.priors) s["priors"].push_back(fs::absolute(p).string());
  }
  if (o.no_standardize) s["standardize"] = false;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Restricted bridge estimation: fit, tune, simulate, analyze and check."};
  app.require_subcommand(1);

  std::optional<std::string> config_path;
  std::optional<unsigned long long> seed;
  std::optional<std::string> output_dir;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Root seed (overrides the config)");
  app.add_option("--output-dir", output_dir, "Directory for output files (overrides the config)");

  Overrides fit_o, cv_o, sim_o, an_o, chk_o;

  auto* fit = app.add_subcommand("fit", "Fit one estimator and write fit.json");
  add(fit, "--data", "data", fit_o.paths, "CSV file with a header row");
  add(fit, "--response", "response", fit_o.strings, "Response column name");
  add(fit, "--estimator", "estimator", fit_o.strings,
      "bridge, rbridge, ridge, lasso, enet, scad, ols or oracle");
  add(fit, "--lambda", "lambda", fit_o.numbers, "Penalty level");
  add(fit, "--q", "q", fit_o.numbers, "Bridge exponent");
  add(fit, "--alpha", "alpha", fit_o.numbers, "Elastic-net mixing (1 = LASSO)");
  add(fit, "--restriction", "restriction", fit_o.paths, "Restriction JSON");
  fit->add_flag("--no-standardize", fit_o.no_standardize, "Fit on the raw columns");

  auto* cv = app.add_subcommand("cv", "Cross-validate (lambda, q) and write the CVE surface");
  add(cv, "--data", "data", cv_o.paths, "CSV file with a header row");
  add(cv, "--response", "response", cv_o.strings, "Response column name");
  add(cv, "--restriction", "restriction", cv_o.paths, "Restriction JSON");
  add(cv, "--K", "K", cv_o.integers, "Number of folds");
  add(cv, "--n-lambda", "n_lambda", cv_o.integers, "Size of the default lambda grid");
  cv->add_flag("--no-standardize", cv_o.no_standardize, "Use the raw columns");

  auto* sim = app.add_subcommand("simulate", "Run a simulation study and write summary.csv");
  add(sim, "--scenario", "scenario", sim_o.strings, "ex1 or ex2");
  add(sim, "--n", "n", sim_o.integers, "Sample size (ex1)");
  add(sim, "--p", "p", sim_o.integers, "Number of predictors (ex2)");
  add(sim, "--sigma", "sigma", sim_o.numbers, "Noise level");
  add(sim, "--rho", "rho", sim_o.numbers, "AR(1) correlation");
  add(sim, "--nreps", "nreps", sim_o.integers, "Replications");
  add(sim, "--threads", "threads", sim_o.integers, "Worker threads");

  auto* an = app.add_subcommand("analyze", "Repeated-split evaluation on a real dataset");
  add(an, "--data", "data", an_o.paths, "CSV file with a header row");
  add(an, "--response", "response", an_o.strings, "Response column name");
  add(an, "--nreps", "nreps", an_o.integers, "Number of random splits");
  an->add_option("--prior", an_o.priors, "Prior JSON (repeatable)");

  auto* chk = app.add_subcommand("check", "Run a verification check");
  add(chk, "--check", "check", chk_o.strings, "mse_formula, consistency or oracle_equivalence");
  add(chk, "--q", "q", chk_o.numbers, "Bridge exponent");
  add(chk, "--draws", "draws", chk_o.integers, "Monte-Carlo draws (mse_formula)");
  add(chk, "--nreps", "nreps", chk_o.integers, "Replications per n (consistency)");
  add(chk, "--instances", "instances", chk_o.integers, "Random instances (oracle_equivalence)");
  add(chk, "--lambda-exponent", "lambda_exponent", chk_o.numbers,
      "lambda_n = c * n^exponent (consistency)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const std::map<CLI::App*, std::pair<std::string, Overrides*>> commands{
        {fit, {"fit", &fit_o}},      {cv, {"cv", &cv_o}},        {sim, {"simulate", &sim_o}},
        {an, {"analyze", &an_o}},    {chk, {"check", &chk_o}}};
    const auto& [name, overrides] = commands.at(app.get_subcommands().front());

    std::optional<fs::path> cfg;
    if (config_path) cfg = fs::path(*config_path);
    json tree = load_config_tree(cfg);
    if (!cfg) tree["schema_version"] = rbridge::kSchemaVersion;
    if (seed) tree["seed"] = *seed;
    if (output_dir) tree["output_dir"] = fs::absolute(*output_dir).string();
    apply(tree, name, *overrides);
    const fs::path base = cfg ? fs::absolute(*cfg).parent_path() : fs::current_path();
    const RunConfig config = parse_config(tree, name, base);

    if (name == "fit") return run_fit(config);
    if (name == "cv") return run_cv(config);
    if (name == "simulate") return run_simulate(config);
    if (name == "analyze") return run_analyze(config);
    return run_check(config);
  } catch (const rbridge::InfeasibleRestriction& e) {
    std::cerr << "infeasible restriction: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const rbridge::SingularSystem& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const rbridge::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
