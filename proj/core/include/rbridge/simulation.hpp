#pragma once

#include <rbridge/restriction.hpp>
#include <rbridge/types.hpp>

#include <cstdint>
#include <string>

namespace rbridge {

/// One data-generating setup: rows x_i ~ N(0, Sigma) with Sigma_ij = rho^|i-j|,
/// y = X beta + sigma * eps.
struct Scenario {
  Index n = 0;
  Index p = 0;
  Vector beta_true;
  double sigma = 1.0;
  double rho = 0.5;
  Restriction restriction;
  std::string label;

  /// AR(1) correlation matrix rho^|i-j|.
  Matrix covariance() const;
  /// Indices of the nonzero entries of beta_true.
  IndexList true_support() const;
};

Matrix ar1_covariance(Index p, double rho);

/// n x p matrix with i.i.d. N(0, Sigma) rows, Sigma = ar1_covariance(p, rho).
Matrix gen_ar1_design(Index n, Index p, double rho, std::uint64_t seed);

/// X beta + sigma z with z standard normal.
Vector gen_response(const Matrix& X, const Vector& beta, double sigma, std::uint64_t seed);

/// beta = (3, 1.5, 0, 0, 2, 0, 0, 0); cases:
///   1: b1 + b2 + b5 = 6.5
///   2: -b1 + b2 + b5 = 0.5
///   3: both rows
///   4: b3 = b4 = b6 = b7 = b8 = 0
Scenario example1_scenario(int restriction_case, Index n, double sigma, double rho);

/// n = 50 and beta = (0 x10, 2 x10, 0 x10, -2 x10, 0 x(p-40)); cases:
///   1: true zeros pinned to 0
///   2: true zeros pinned to 0.1
///   3: true nonzeros pinned to their values (+-2)
///   4: true nonzeros pinned to +-2.1
Scenario example2_scenario(int restriction_case, Index p, double sigma, double rho);

}  // namespace rbridge
