#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>

namespace fixture {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline Matrix gaussian(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  Matrix M(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) M(i, j) = z(rng);
  return M;
}

inline Vector gaussian(Eigen::Index n, std::uint64_t seed) { return gaussian(n, 1, seed).col(0); }

/// Columns with orthonormal columns from a thin QR of a Gaussian matrix.
inline Matrix orthonormal(Eigen::Index n, Eigen::Index p, std::uint64_t seed) {
  Eigen::HouseholderQR<Matrix> qr(gaussian(n, p, seed));
  return qr.householderQ() * Matrix::Identity(n, p);
}

/// Random SPD matrix A A' + shift I.
inline Matrix spd(Eigen::Index p, std::uint64_t seed, double shift = 0.5) {
  const Matrix A = gaussian(p, p, seed);
  Matrix S = A * A.transpose();
  S.diagonal().array() += shift;
  return S;
}

/// y = X beta + noise * z.
inline Vector response(const Matrix& X, const Vector& beta, double noise, std::uint64_t seed) {
  return X * beta + noise * gaussian(X.rows(), seed);
}

}  // namespace fixture
