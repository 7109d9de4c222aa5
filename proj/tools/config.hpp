#pragma once

#include <rbridge/dataset.hpp>
#include <rbridge/estimators.hpp>
#include <rbridge/selection.hpp>
#include <rbridge/solver.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rbridge::cli {

/// Bad or missing configuration; maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DataConfig {
  std::filesystem::path path;
  std::string response;
  bool standardize = true;
  ScaleConvention scale = ScaleConvention::population;
};

struct FitConfig {
  DataConfig data;
  ArmKind estimator = ArmKind::bridge;
  double lambda = 1.0;
  double q = 1.0;
  double alpha = 0.5;
  double a = 3.7;
  std::optional<std::filesystem::path> restriction;
  IndexList support;  // oracle, 0-based
  SolverOptions solver;
  CdOptions cd;
};

struct CvConfig {
  DataConfig data;
  std::optional<std::filesystem::path> restriction;
  std::optional<Vector> lambdas;
  int n_lambda = 20;
  std::vector<double> qs = CvGrid::default_qs();
  int K = 10;
  CvNormalization normalization = CvNormalization::full_n;
  SolverOptions solver;
};

struct SimulateConfig {
  int example = 1;
  Index n = 40;
  Index p = 100;
  double sigma = 1.0;
  double rho = 0.5;
  int nreps = 500;
  std::vector<std::string> arms;  // empty: every table arm
  TuningOptions tuning;
  int threads = 1;
  bool raw_me = true;
};

struct AnalyzeConfig {
  DataConfig data;
  std::vector<std::filesystem::path> priors;
  std::optional<int> nreps;
  std::vector<std::string> arms;  // empty: default arm list
  TuningOptions tuning;
};

struct CheckConfig {
  std::string check;
  // mse_formula
  int draws = 100000;
  Index n = 30;
  Index p = 4;
  double sigma = 1.0;
  double lambda = 5.0;
  double q = 1.0;
  double rho = 0.5;
  // consistency
  std::vector<Index> ns = {40, 80, 160, 320};
  double lambda_coefficient = 1.0;
  double lambda_exponent = 0.5;
  int nreps = 500;
  int restriction_case = 1;
  // oracle_equivalence
  int instances = 100;
};

struct RunConfig {
  int schema_version = 1;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = ".";
  std::string command;
  FitConfig fit;
  CvConfig cv;
  SimulateConfig simulate;
  AnalyzeConfig analyze;
  CheckConfig check;
};

/// Reads the config file (when given) into a JSON tree.
nlohmann::json load_config_tree(const std::optional<std::filesystem::path>& path);

/// Validates `tree` for `command` against the schema and builds the typed config.
/// Unknown keys, wrong types and missing required values raise ConfigError.
/// Relative paths resolve against `base_dir`.
RunConfig parse_config(const nlohmann::json& tree, const std::string& command,
                       const std::filesystem::path& base_dir);

}  // namespace rbridge::cli
