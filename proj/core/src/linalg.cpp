#include <rbridge/errors.hpp>
#include <rbridge/linalg.hpp>

#include <fmt/format.h>

namespace rbridge {

Gram Gram::from(const Matrix& X, const Vector& y) {
  if (X.rows() != y.size())
    throw InvalidArgument(fmt::format("X has {} rows but y has {}", X.rows(), y.size()));
  Gram g;
  g.xtx = Matrix(X.cols(), X.cols());
  g.xtx.setZero();
  g.xtx.selfadjointView<Eigen::Lower>().rankUpdate(X.transpose());
  g.xtx.triangularView<Eigen::StrictlyUpper>() = g.xtx.transpose();
  g.xty = X.transpose() * y;
  g.yty = y.squaredNorm();
  g.n = X.rows();
  return g;
}

double Gram::rss(const Vector& beta) const {
  return yty - 2.0 * beta.dot(xty) + beta.dot(xtx * beta);
}

Eigen::LLT<Matrix> spd_factor(const Matrix& A, const char* what) {
  Eigen::LLT<Matrix> llt(A);
  if (llt.info() != Eigen::Success)
    throw SingularSystem(fmt::format("{}: matrix is not positive definite", what));
  if (A.rows() > 0 && llt.rcond() < 1e-10) {
    // Large penalty weights inflate the raw condition number harmlessly; judge the scaled matrix.
    const Vector d = A.diagonal().cwiseSqrt().cwiseInverse();
    const Eigen::LLT<Matrix> scaled(d.asDiagonal() * A * d.asDiagonal());
    if (scaled.info() != Eigen::Success || scaled.rcond() < 1e-13)
      throw SingularSystem(fmt::format("{}: matrix is numerically singular", what));
  }
  return llt;
}

Vector spd_solve(const Matrix& A, const Vector& b, const char* what) {
  const Eigen::LLT<Matrix> llt = spd_factor(A, what);
  Vector x = llt.solve(b);
  if (!x.allFinite()) throw SingularSystem(fmt::format("{}: solve produced non-finite values", what));
  return x;
}

Vector take(const Vector& v, const IndexList& cols) {
  Vector out(static_cast<Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) out(static_cast<Index>(i)) = v(cols[i]);
  return out;
}

Matrix take(const Matrix& M, const IndexList& rows, const IndexList& cols) {
  return M(rows, cols);
}

Matrix take_cols(const Matrix& M, const IndexList& cols) { return M(Eigen::all, cols); }

}  // namespace rbridge
