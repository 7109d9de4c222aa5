#include <rbridge/errors.hpp>
#include <rbridge/restriction.hpp>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <cmath>

namespace rbridge {
namespace {

std::string one_based(const IndexList& rows) {
  std::vector<Index> shifted(rows.size());
  std::transform(rows.begin(), rows.end(), shifted.begin(), [](Index i) { return i + 1; });
  return fmt::format("{}", fmt::join(shifted, ", "));
}

}  // namespace

IndexList dependent_rows(const Matrix& R, double tol) {
  IndexList dependent;
  if (R.rows() == 0) return dependent;
  const double scale = R.rowwise().norm().maxCoeff();
  if (scale == 0.0) {
    for (Index k = 0; k < R.rows(); ++k) dependent.push_back(k);
    return dependent;
  }

  // Modified Gram-Schmidt with one reorthogonalization pass.
  std::vector<Vector> basis;
  for (Index k = 0; k < R.rows(); ++k) {
    Vector v = R.row(k).transpose();
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) v -= b.dot(v) * b;
    const double norm = v.norm();
    if (norm <= tol * scale) {
      dependent.push_back(k);
    } else {
      basis.push_back(v / norm);
    }
  }
  return dependent;
}

Restriction::Restriction(Matrix R, Vector r) : R_(std::move(R)), r_(std::move(r)) {
  if (R_.rows() < 1) throw InvalidArgument("restriction needs at least one row");
  if (r_.size() != R_.rows())
    throw InvalidArgument(
        fmt::format("restriction has {} rows but {} right-hand values", R_.rows(), r_.size()));
  if (R_.rows() >= R_.cols())
    throw InvalidArgument(fmt::format("restriction needs m < p, got m = {}, p = {}", R_.rows(),
                                      R_.cols()));
  if (!R_.allFinite() || !r_.allFinite())
    throw InvalidArgument("restriction has non-finite entries");

  Eigen::JacobiSVD<Matrix> svd(R_);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= kRankTol * sv(0)) {
    const IndexList dep = dependent_rows(R_);
    throw InvalidArgument(fmt::format("restriction matrix is rank deficient; dependent row(s): {}",
                                      dep.empty() ? std::string("?") : one_based(dep)));
  }
}

double Restriction::residual_inf(const Vector& beta) const {
  if (beta.size() != p()) throw InvalidArgument("coefficient length does not match restriction");
  return (R_ * beta - r_).lpNorm<Eigen::Infinity>();
}

Restriction restriction_zeros(const std::set<Index>& indices, Index p) {
  if (p < 1) throw InvalidArgument("restriction_zeros needs p >= 1");
  if (indices.empty()) throw InvalidArgument("restriction_zeros needs at least one index");
  if (static_cast<Index>(indices.size()) >= p)
    throw InvalidArgument(
        fmt::format("{} zero indices would pin all {} coefficients", indices.size(), p));
  Matrix R = Matrix::Zero(static_cast<Index>(indices.size()), p);
  Index row = 0;
  for (Index j : indices) {
    if (j < 1 || j > p)
      throw InvalidArgument(fmt::format("zero index {} out of range [1, {}]", j, p));
    R(row++, j - 1) = 1.0;
  }
  return Restriction(std::move(R), Vector::Zero(row));
}

Restriction restriction_affine(const std::vector<AffineRow>& rows) {
  if (rows.empty()) throw InvalidArgument("restriction_affine needs at least one row");
  const Index p = rows.front().weights.size();
  Matrix R(static_cast<Index>(rows.size()), p);
  Vector r(static_cast<Index>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].weights.size() != p)
      throw InvalidArgument(fmt::format("row {} has {} weights, expected {}", k + 1,
                                        rows[k].weights.size(), p));
    R.row(static_cast<Index>(k)) = rows[k].weights.transpose();
    r(static_cast<Index>(k)) = rows[k].value;
  }
  return Restriction(std::move(R), std::move(r));
}

Restriction transform_restriction(const Restriction& rest, const StandardizationRecord& rec) {
  if (rec.x_scales.size() != rest.p())
    throw InvalidArgument(fmt::format("restriction has {} columns but record has {}", rest.p(),
                                      rec.x_scales.size()));
  Matrix R = rest.R() * rec.x_scales.cwiseInverse().asDiagonal();
  return Restriction(std::move(R), rest.r());
}

}  // namespace rbridge
