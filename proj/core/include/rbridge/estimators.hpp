#pragma once

#include <rbridge/baselines.hpp>
#include <rbridge/dataset.hpp>
#include <rbridge/restriction.hpp>
#include <rbridge/selection.hpp>
#include <rbridge/solver.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rbridge {

enum class ArmKind { lasso, ridge, enet, scad, oracle, ols, bridge, rbridge };

std::string to_string(ArmKind k);
ArmKind arm_kind_from_string(const std::string& s);

/// One comparison arm of a simulation or real-data study.
struct Arm {
  std::string label;
  ArmKind kind = ArmKind::bridge;
  std::optional<Restriction> restriction;  // rbridge only
  IndexList support;                       // oracle only (0-based)
};

/// How arms pick their tuning parameters.
struct TuningOptions {
  int K = 10;
  int n_lambda = 20;
  std::vector<double> qs = CvGrid::default_qs();
  std::vector<double> enet_alphas = {0.2, 0.4, 0.6, 0.8};
  double scad_a = 3.7;
  CvNormalization normalization = CvNormalization::full_n;
  /// Fast mode: skip CV and use these values directly.
  std::optional<double> fixed_lambda;
  std::optional<double> fixed_q;
  SolverOptions solver;
  CdOptions cd;
};

struct ArmFit {
  Vector beta;
  double lambda = 0.0;
  double shape = 0.0;  // q for bridge arms, alpha for elastic net, a for SCAD
  bool converged = true;
};

/// Tunes (unless fixed) and fits `arm` on `train`. `folds` is the shared
/// fold assignment for the training rows.
ArmFit fit_arm(const Arm& arm, const Dataset& train, const TuningOptions& tuning,
               const std::vector<int>& folds, std::uint64_t seed);

}  // namespace rbridge
