#include <rbridge/errors.hpp>
#include <rbridge/random.hpp>
#include <rbridge/simulation.hpp>

#include <fmt/format.h>

#include <cmath>
#include <set>

namespace rbridge {

Matrix Scenario::covariance() const { return ar1_covariance(p, rho); }

IndexList Scenario::true_support() const {
  IndexList s;
  for (Index j = 0; j < beta_true.size(); ++j)
    if (beta_true(j) != 0.0) s.push_back(j);
  return s;
}

Matrix ar1_covariance(Index p, double rho) {
  if (!(std::abs(rho) < 1.0)) throw InvalidArgument(fmt::format("|rho| must be < 1, got {}", rho));
  Matrix S(p, p);
  for (Index i = 0; i < p; ++i)
    for (Index j = 0; j < p; ++j) S(i, j) = std::pow(rho, static_cast<double>(std::abs(i - j)));
  return S;
}

Matrix gen_ar1_design(Index n, Index p, double rho, std::uint64_t seed) {
  if (n < 1 || p < 1) throw InvalidArgument("design needs n >= 1 and p >= 1");
  const Matrix L = ar1_covariance(p, rho).llt().matrixL();
  Rng rng(seed);
  std::normal_distribution<double> normal;
  Matrix Z(n, p);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < p; ++j) Z(i, j) = normal(rng);
  return Z * L.transpose();
}

Vector gen_response(const Matrix& X, const Vector& beta, double sigma, std::uint64_t seed) {
  if (X.cols() != beta.size())
    throw InvalidArgument(fmt::format("X has {} columns but beta has {}", X.cols(), beta.size()));
  if (!(sigma >= 0.0)) throw InvalidArgument("sigma must be >= 0");
  Vector y = X * beta;
  Rng rng(seed);
  std::normal_distribution<double> normal;
  for (Index i = 0; i < y.size(); ++i) y(i) += sigma * normal(rng);
  return y;
}

Scenario example1_scenario(int restriction_case, Index n, double sigma, double rho) {
  const Index p = 8;
  Vector beta(p);
  beta << 3.0, 1.5, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0;
  Vector row1(p), row2(p);
  row1 << 1, 1, 0, 0, 1, 0, 0, 0;
  row2 << -1, 1, 0, 0, 1, 0, 0, 0;

  auto make = [&](Restriction rest) {
    return Scenario{n, p, beta, sigma, rho, std::move(rest),
                    fmt::format("ex1_case{}_n{}_sigma{}_rho{}", restriction_case, n, sigma, rho)};
  };
  switch (restriction_case) {
    case 1: return make(restriction_affine({{row1, 6.5}}));
    case 2: return make(restriction_affine({{row2, 0.5}}));
    case 3: return make(restriction_affine({{row1, 6.5}, {row2, 0.5}}));
    case 4: return make(restriction_zeros({3, 4, 6, 7, 8}, p));
    default:
      throw InvalidArgument(fmt::format("example 1 has cases 1-4, got {}", restriction_case));
  }
}

Scenario example2_scenario(int restriction_case, Index p, double sigma, double rho) {
  if (p < 41) throw InvalidArgument(fmt::format("example 2 needs p > 40, got {}", p));
  if (restriction_case < 1 || restriction_case > 4)
    throw InvalidArgument(fmt::format("example 2 has cases 1-4, got {}", restriction_case));
  Vector beta = Vector::Zero(p);
  beta.segment(10, 10).setConstant(2.0);
  beta.segment(30, 10).setConstant(-2.0);

  IndexList zeros, nonzeros;
  for (Index j = 0; j < p; ++j) (beta(j) != 0.0 ? nonzeros : zeros).push_back(j);

  const bool pin_zeros = restriction_case <= 2;
  const IndexList& cols = pin_zeros ? zeros : nonzeros;
  Matrix R = Matrix::Zero(static_cast<Index>(cols.size()), p);
  Vector r(static_cast<Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const auto row = static_cast<Index>(k);
    const Index j = cols[k];
    R(row, j) = 1.0;
    switch (restriction_case) {
      case 1: r(row) = 0.0; break;
      case 2: r(row) = 0.1; break;
      case 3: r(row) = beta(j); break;
      default: r(row) = beta(j) > 0 ? 2.1 : -2.1; break;
    }
  }
  return Scenario{50, p, beta, sigma, rho, Restriction(std::move(R), std::move(r)),
                  fmt::format("ex2_case{}_p{}_sigma{}_rho{}", restriction_case, p, sigma, rho)};
}

}  // namespace rbridge
