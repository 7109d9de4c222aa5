#pragma once

#include <rbridge/dataset.hpp>
#include <rbridge/linalg.hpp>
#include <rbridge/penalty.hpp>
#include <rbridge/restriction.hpp>
#include <rbridge/types.hpp>

#include <optional>
#include <variant>
#include <vector>

namespace rbridge {

/// Start from ridge coefficients (C_n + lambda_init I)^-1 X'y.
struct RidgeInit {
  double lambda = 1.0;
};

struct SolverOptions {
  double eta = 1e-7;  // pruning threshold and convergence tolerance
  int max_iter = 500;
  std::variant<RidgeInit, Vector> init = RidgeInit{};

  void validate() const;
};

struct FitResult {
  Vector beta;           // full length p; pruned coordinates are exactly 0
  IndexList active;      // retained columns, ascending
  int iterations = 0;
  bool converged = false;
  std::vector<double> objective_trace;
  PenaltySpec penalty = PenaltySpec::bridge(0.0, 2.0);

  /// Number of nonzero coefficients.
  Index n_selected() const;
};

/// The quadratic system behind one LQA step on the active columns:
/// S = C_a + diag(weights).
struct LqaSystem {
  Matrix gram;
  Vector weights;

  LqaSystem(Matrix gram, Vector weights);
  Matrix S() const;
};

/// Diagonal of the local quadratic approximation of lambda * sum |b_j|^q:
/// (lambda q / 2) |b_j|^(q-2). Entries with |b_j| < eta are a caller error
/// for q < 2 (prune first).
Vector penalty_weights(const Vector& beta_local, double lambda, double q, double eta = 1e-7);

/// Projects beta_hat onto {R b = r} in the metric of S:
///   beta_hat - S^-1 R' (R S^-1 R')^-1 (R beta_hat - r).
/// `R` and `r` must already be reduced to the active columns of `sys`.
Vector restricted_correction(const Vector& beta_hat, const LqaSystem& sys, const Matrix& R,
                             const Vector& r);
Vector restricted_correction(const Vector& beta_hat, const LqaSystem& sys,
                             const Restriction& rest);

/// Restriction reduced to a set of active columns.
struct ReducedRestriction {
  Matrix R;
  Vector r;
  IndexList rows;  // original row index of each kept row
};

/// Drops pruned columns, then rows that became zero (error when their
/// right-hand side is nonzero), then linearly dependent rows (error when
/// they contradict the rows they depend on).
ReducedRestriction reduce_restriction(const Matrix& R, const Vector& r, const IndexList& active);

/// Ridge coefficients (C_n + lambda_init I)^-1 X'y.
Vector ridge_init(const Gram& g, double lambda_init);
Vector ridge_init(const Dataset& d, double lambda_init);

/// Least squares on `support` (all columns when omitted), zeros elsewhere.
Vector ols(const Gram& g, const std::optional<IndexList>& support = std::nullopt);
Vector ols(const Dataset& d, const std::optional<IndexList>& support = std::nullopt);

/// Penalized objective ||y - X b||^2 + pen(b) for the bridge or SCAD family.
double penalized_objective(const Gram& g, const PenaltySpec& pen, const Vector& beta);

/// LQA iteration for the bridge penalty, no restriction.
FitResult fit_bridge(const Gram& g, const PenaltySpec& pen, const SolverOptions& opts = {});
FitResult fit_bridge(const Dataset& d, const PenaltySpec& pen, const SolverOptions& opts = {});

/// LQA iteration with the restriction correction applied at every step.
FitResult fit_rbridge(const Gram& g, const PenaltySpec& pen, const Restriction& rest,
                      const SolverOptions& opts = {});
FitResult fit_rbridge(const Dataset& d, const PenaltySpec& pen, const Restriction& rest,
                      const SolverOptions& opts = {});

/// Generic LQA driver used by the bridge, restricted bridge and SCAD fits.
/// `rest` may be null for the unrestricted case.
FitResult fit_lqa(const Gram& g, const PenaltySpec& pen, const Restriction* rest,
                  const SolverOptions& opts);

/// A single update from `beta` (full length p): prune, form weights, solve,
/// correct. Coordinates with |beta_j| < eta come back as exactly 0.
Vector lqa_step(const Gram& g, const PenaltySpec& pen, const Restriction* rest,
                const Vector& beta, double eta = 1e-7);

/// Mean squared error of the one-step restricted estimator with weights held
/// fixed: sigma2 tr(M C M) + tr(M W b b' W M), where
/// M = S^-1 - S^-1 R'(R S^-1 R')^-1 R S^-1 and C = S - W.
/// Requires R beta_true = r to within 1e-8.
double analytic_mse(const LqaSystem& sys, const Restriction& rest, const Vector& beta_true,
                    double sigma2 = 1.0);

/// Same bias term, variance taken as sigma2 tr(M S M) = sigma2 tr(M).
/// Exceeds analytic_mse by sigma2 tr(M W M) >= 0; equal when W = 0.
double analytic_mse_bound(const LqaSystem& sys, const Restriction& rest, const Vector& beta_true,
                          double sigma2 = 1.0);

}  // namespace rbridge
