#include <rbridge/dataset.hpp>
#include <rbridge/errors.hpp>

#include <fmt/format.h>

#include <cmath>

namespace rbridge {
namespace {

constexpr double kMeanTol = 1e-10;

double column_scale(const Eigen::Ref<const Vector>& centered, ScaleConvention c) {
  const auto n = static_cast<double>(centered.size());
  const double divisor = c == ScaleConvention::population ? n : n - 1.0;
  return std::sqrt(centered.squaredNorm() / divisor);
}

}  // namespace

Dataset::Dataset(Matrix X, Vector y, std::vector<std::string> column_names, bool standardized,
                 std::string response_name)
    : X_(std::move(X)),
      y_(std::move(y)),
      column_names_(std::move(column_names)),
      standardized_(standardized),
      response_name_(std::move(response_name)) {
  if (X_.rows() < 2) throw InvalidArgument(fmt::format("dataset needs n >= 2, got {}", X_.rows()));
  if (X_.cols() < 1) throw InvalidArgument("dataset needs at least one predictor");
  if (y_.size() != X_.rows())
    throw InvalidArgument(fmt::format("response has {} entries but X has {} rows", y_.size(),
                                      X_.rows()));
  if (!column_names_.empty() && static_cast<Index>(column_names_.size()) != X_.cols())
    throw InvalidArgument(fmt::format("{} column names for {} columns", column_names_.size(),
                                      X_.cols()));
  if (!X_.allFinite()) throw InvalidArgument("design matrix has non-finite entries");
  if (!y_.allFinite()) throw InvalidArgument("response has non-finite entries");

  if (standardized_) {
    const Vector means = X_.colwise().mean();
    for (Index j = 0; j < X_.cols(); ++j)
      if (std::abs(means(j)) > kMeanTol)
        throw InvalidArgument(
            fmt::format("column '{}' is flagged standardized but has mean {}", column_name(j),
                        means(j)));
    if (std::abs(y_.mean()) > kMeanTol)
      throw InvalidArgument("response is flagged centered but has nonzero mean");
  }
}

std::string Dataset::column_name(Index j) const {
  if (!column_names_.empty()) return column_names_[static_cast<std::size_t>(j)];
  return fmt::format("x{}", j + 1);
}

Dataset Dataset::subset(const IndexList& rows) const {
  Matrix Xs(static_cast<Index>(rows.size()), X_.cols());
  Vector ys(static_cast<Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Xs.row(static_cast<Index>(i)) = X_.row(rows[i]);
    ys(static_cast<Index>(i)) = y_(rows[i]);
  }
  return Dataset(std::move(Xs), std::move(ys), column_names_, false, response_name_);
}

StandardizationRecord StandardizationRecord::inverse() const {
  StandardizationRecord inv = *this;
  inv.x_scales = x_scales.cwiseInverse();
  return inv;
}

std::pair<Dataset, StandardizationRecord> standardize(const Dataset& d,
                                                      ScaleConvention convention) {
  if (d.standardized()) throw InvalidArgument("dataset is already standardized");

  StandardizationRecord rec;
  rec.convention = convention;
  rec.x_means = d.X().colwise().mean().transpose();
  rec.y_mean = d.y().mean();
  rec.x_scales.resize(d.p());

  Matrix Xs = d.X().rowwise() - rec.x_means.transpose();
  for (Index j = 0; j < d.p(); ++j) {
    const double s = column_scale(Xs.col(j), convention);
    if (!(s > 0.0) || s <= 1e-12 * (1.0 + std::abs(rec.x_means(j))))
      throw InvalidArgument(fmt::format("column '{}' is constant (zero scale)", d.column_name(j)));
    rec.x_scales(j) = s;
    Xs.col(j) /= s;
  }
  Vector ys = d.y().array() - rec.y_mean;

  return {Dataset(std::move(Xs), std::move(ys), d.column_names(), true, d.response_name()), rec};
}

Dataset apply_standardization(const Dataset& d, const StandardizationRecord& rec) {
  if (rec.x_means.size() != d.p() || rec.x_scales.size() != d.p())
    throw InvalidArgument("standardization record does not match dataset width");
  Matrix Xs = (d.X().rowwise() - rec.x_means.transpose()).array().rowwise() /
              rec.x_scales.transpose().array();
  Vector ys = d.y().array() - rec.y_mean;
  return Dataset(std::move(Xs), std::move(ys), d.column_names(), false, d.response_name());
}

Dataset destandardize(const Dataset& d, const StandardizationRecord& rec) {
  if (rec.x_means.size() != d.p() || rec.x_scales.size() != d.p())
    throw InvalidArgument("standardization record does not match dataset width");
  Matrix X = (d.X().array().rowwise() * rec.x_scales.transpose().array()).matrix().rowwise() +
             rec.x_means.transpose();
  Vector y = d.y().array() + rec.y_mean;
  return Dataset(std::move(X), std::move(y), d.column_names(), false, d.response_name());
}

Vector destandardize_coefficients(const Vector& beta, const StandardizationRecord& rec) {
  if (beta.size() != rec.x_scales.size())
    throw InvalidArgument("coefficient vector does not match record width");
  return beta.cwiseQuotient(rec.x_scales);
}

}  // namespace rbridge
