#pragma once

#include <rbridge/dataset.hpp>
#include <rbridge/linalg.hpp>
#include <rbridge/solver.hpp>

namespace rbridge {

struct CdOptions {
  double tol = 1e-8;  // on the largest coordinate change in a sweep
  int max_sweeps = 10000;

  void validate() const;
};

/// (C_n + lambda I)^-1 X'y with every column active.
FitResult fit_ridge(const Gram& g, double lambda);
FitResult fit_ridge(const Dataset& d, double lambda);

/// Cyclic coordinate descent on ||y - X b||^2 + lambda [alpha |b|_1 + (1 - alpha) |b|_2^2].
/// `objective_trace` holds the objective after each full sweep.
FitResult fit_enet(const Gram& g, double lambda, double alpha, const CdOptions& opts = {});
FitResult fit_enet(const Dataset& d, double lambda, double alpha, const CdOptions& opts = {});

/// SCAD derivative p'(t) for t >= 0.
double scad_derivative(double t, double lambda, double a);
/// SCAD penalty p(t) for t >= 0.
double scad_penalty(double t, double lambda, double a);

/// LQA weights for ||y - X b||^2 + sum p(|b_j|): p'(|b_j|) / (2 |b_j|).
Vector scad_weights(const Vector& beta_local, double lambda, double a);

/// LQA fixed point for the SCAD penalty; pruning as in fit_bridge.
FitResult fit_scad(const Gram& g, double lambda, double a = 3.7, const SolverOptions& opts = {});
FitResult fit_scad(const Dataset& d, double lambda, double a = 3.7,
                   const SolverOptions& opts = {});

}  // namespace rbridge
