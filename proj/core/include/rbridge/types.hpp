#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace rbridge {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;
using IndexList = std::vector<Index>;

/// Schema version stamped into every JSON and CSV artifact.
inline constexpr int kSchemaVersion = 1;

}  // namespace rbridge
