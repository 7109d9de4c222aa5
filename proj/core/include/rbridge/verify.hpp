#pragma once

#include <rbridge/simulation.hpp>
#include <rbridge/solver.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace rbridge {

/// Monte-Carlo check of analytic_mse for the fixed-weights restricted estimator.
struct MseCheckSetup {
  Index n = 30;
  Index p = 4;
  double sigma = 1.0;
  double lambda = 5.0;
  double q = 1.0;
  double rho = 0.5;
  std::uint64_t seed = 2024;
};

struct MseCheckResult {
  double analytic = 0.0;
  double empirical = 0.0;
  double relative_gap = 0.0;
  double bound = 0.0;  // analytic_mse_bound at the same system
  int draws = 0;
};

/// Draws a fixed design, a beta_true satisfying a one-row restriction and
/// fixed LQA weights, then averages ||b_R - beta||^2 over `draws` noise vectors.
MseCheckResult mse_formula_check(const MseCheckSetup& setup, int draws);

/// lambda_n = coefficient * n^exponent.
struct LambdaRule {
  double coefficient = 1.0;
  double exponent = 0.5;

  double operator()(double n) const;
  /// lambda_n / n -> 0 exactly when exponent < 1 (or coefficient == 0).
  bool is_o_of_n() const;
  std::string describe() const;
};

struct ConsistencyCurve {
  std::vector<Index> ns;
  std::vector<double> lambdas;
  std::vector<double> median_error;  // median ||b_R - beta||^2 per n
  int decreasing_steps = 0;          // strict decreases between consecutive ns
  double kendall_tau = 0.0;          // rank correlation of (n, error)
  bool hypothesis_holds = true;
  std::string annotation;
};

/// Restricted bridge at fixed q and lambda_n per n, on the template
/// scenario's design/beta/restriction with n replaced by each entry of `ns`.
ConsistencyCurve consistency_experiment(const std::vector<Index>& ns, const LambdaRule& rule,
                                        const Scenario& scenario, double q, int nreps,
                                        std::uint64_t seed, const SolverOptions& opts = {});

struct EquivalenceCheck {
  double gap = 0.0;
  double tolerance = 0.0;
  int instances = 0;
  bool passed = false;
  std::string description;
};

/// q = 2: LQA bridge/rbridge against ridge and the KKT system.
/// q = 1: LQA bridge against coordinate-descent LASSO.
EquivalenceCheck oracle_equivalence_check(double q, int instances, std::uint64_t seed);

}  // namespace rbridge
