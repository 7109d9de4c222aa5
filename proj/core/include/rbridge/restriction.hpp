#pragma once

#include <rbridge/dataset.hpp>
#include <rbridge/types.hpp>

#include <set>
#include <vector>

namespace rbridge {

/// Relative singular-value tolerance used for rank decisions on R.
inline constexpr double kRankTol = 1e-10;

/// Linear equality restriction R beta = r with R of size m x p, m < p,
/// and full row rank.
class Restriction {
 public:
  Restriction(Matrix R, Vector r);

  const Matrix& R() const noexcept { return R_; }
  const Vector& r() const noexcept { return r_; }
  Index m() const noexcept { return R_.rows(); }
  Index p() const noexcept { return R_.cols(); }

  /// max_k |(R beta - r)_k|
  double residual_inf(const Vector& beta) const;

 private:
  Matrix R_;
  Vector r_;
};

/// Row indices (0-based) that lie in the span of the rows before them,
/// scanning top to bottom. Empty when R has full row rank at `tol`.
IndexList dependent_rows(const Matrix& R, double tol = kRankTol);

/// Selector restriction beta_j = 0 for each 1-based index in `indices`.
Restriction restriction_zeros(const std::set<Index>& indices, Index p);

struct AffineRow {
  Vector weights;
  double value = 0.0;
};

/// Stacks weight rows into R and values into r.
Restriction restriction_affine(const std::vector<AffineRow>& rows);

/// Moves a restriction on original-scale coefficients onto the standardized
/// scale: R'_kj = R_kj / scale_j, r' = r.
Restriction transform_restriction(const Restriction& rest, const StandardizationRecord& rec);

}  // namespace rbridge
