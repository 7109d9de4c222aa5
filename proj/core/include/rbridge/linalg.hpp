#pragma once

#include <rbridge/dataset.hpp>
#include <rbridge/types.hpp>

namespace rbridge {

/// Sufficient statistics of a least-squares problem: C_n = X'X, X'y, y'y.
/// Every estimator in the library works from these, so cross-validation can
/// build them once per fold and share them across the whole grid.
struct Gram {
  Matrix xtx;
  Vector xty;
  double yty = 0.0;
  Index n = 0;

  static Gram from(const Matrix& X, const Vector& y);
  static Gram from(const Dataset& d) { return from(d.X(), d.y()); }

  Index p() const noexcept { return xtx.rows(); }

  /// ||y - X beta||^2 evaluated through the statistics.
  double rss(const Vector& beta) const;
};

/// LLT of a symmetric positive definite A. Throws SingularSystem when the
/// factorization fails or when A, after scaling to unit diagonal, has a
/// reciprocal condition number below 1e-13.
Eigen::LLT<Matrix> spd_factor(const Matrix& A, const char* what);

/// Solves A x = b for symmetric positive definite A via spd_factor.
Vector spd_solve(const Matrix& A, const Vector& b, const char* what);

/// Columns `cols` of `v`.
Vector take(const Vector& v, const IndexList& cols);
/// Submatrix at rows `rows`, columns `cols`.
Matrix take(const Matrix& M, const IndexList& rows, const IndexList& cols);
/// Columns `cols` of M, all rows.
Matrix take_cols(const Matrix& M, const IndexList& cols);

}  // namespace rbridge
