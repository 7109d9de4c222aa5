#pragma once

#include <rbridge/types.hpp>

#include <string>
#include <utility>
#include <vector>

namespace rbridge {

/// Response vector plus design matrix (rows are observations).
///
/// Instances are validated on construction and immutable afterwards:
/// n >= 2, p >= 1, all entries finite, and when `standardized` is set every
/// column of X has mean ~0 and the response has mean ~0.
class Dataset {
 public:
  Dataset(Matrix X, Vector y, std::vector<std::string> column_names = {},
          bool standardized = false, std::string response_name = {});

  const Matrix& X() const noexcept { return X_; }
  const Vector& y() const noexcept { return y_; }
  const std::vector<std::string>& column_names() const noexcept { return column_names_; }
  const std::string& response_name() const noexcept { return response_name_; }
  bool standardized() const noexcept { return standardized_; }

  Index n() const noexcept { return X_.rows(); }
  Index p() const noexcept { return X_.cols(); }

  /// Column label, falling back to "x<j+1>" when no names were given.
  std::string column_name(Index j) const;

  /// Rows selected by `rows`, in that order. The result is never flagged
  /// standardized: a subset of centered data is generally not centered.
  Dataset subset(const IndexList& rows) const;

 private:
  Matrix X_;
  Vector y_;
  std::vector<std::string> column_names_;
  bool standardized_ = false;
  std::string response_name_;
};

enum class ScaleConvention {
  population,  // divisor n
  sample,      // divisor n - 1
};

/// Everything needed to map between original and standardized scale.
struct StandardizationRecord {
  Vector x_means;
  Vector x_scales;  // strictly positive
  double y_mean = 0.0;
  ScaleConvention convention = ScaleConvention::population;

  /// Record whose scales are reciprocal. Column-scaling a restriction with
  /// the inverse undoes a transform with this record.
  StandardizationRecord inverse() const;
};

/// Centers y, centers and scales every column of X.
/// Throws InvalidArgument when a column has zero scale (names the column)
/// or when the dataset is already flagged standardized.
std::pair<Dataset, StandardizationRecord> standardize(
    const Dataset& d, ScaleConvention convention = ScaleConvention::population);

/// Applies a previously fitted record (e.g. training statistics to a test
/// split). The result is not flagged standardized.
Dataset apply_standardization(const Dataset& d, const StandardizationRecord& rec);

/// Inverse of standardize: returns the original-scale dataset.
Dataset destandardize(const Dataset& d, const StandardizationRecord& rec);

/// Original-scale coefficients from standardized-scale ones.
Vector destandardize_coefficients(const Vector& beta, const StandardizationRecord& rec);

}  // namespace rbridge
