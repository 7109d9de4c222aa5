#pragma once

#include <rbridge/dataset.hpp>
#include <rbridge/estimators.hpp>
#include <rbridge/io.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace rbridge {

struct SplitEvalRow {
  std::string label;
  double mse_y = 0.0;  // median over splits of ||y_test - X_test b||^2
  double rmse_y = 0.0;
  std::vector<double> mse_beta0;  // per prior: median ||beta0 - b||^2
  std::vector<double> rmse_beta0;
  double n_vars = 0.0;  // median number of nonzero coefficients
};

struct SplitEvalReport {
  std::vector<SplitEvalRow> rows;
  std::vector<std::string> prior_labels;
  int nreps = 0;
  int resampled_splits = 0;
  std::uint64_t seed = 0;
};

/// 500 when n > p, else 100.
int default_split_reps(const Dataset& d);

/// Repeated half/half splits of raw data `d`. Each split standardizes on the
/// training half, applies those statistics to the test half, tunes every arm
/// by CV on the training half and records test error, distance to each prior
/// that carries beta_prior, and model size. Training gets ceil(n/2) rows.
SplitEvalReport split_evaluate(const Dataset& d, const std::vector<Arm>& arms,
                               const std::vector<Prior>& priors, int nreps, std::uint64_t seed,
                               const TuningOptions& tuning,
                               ScaleConvention convention = ScaleConvention::population);

/// Divides each column by its minimum; the minimum itself maps to exactly 1.
std::vector<double> relative_to_min(const std::vector<double>& values);

}  // namespace rbridge
