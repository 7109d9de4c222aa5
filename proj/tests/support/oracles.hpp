#pragma once

// Reference computations that share no code with the library solvers.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Zooming grid search for a minimizer of f over the box [lo, hi]^d, d <= 3.
/// Each level scans 2*half+1 points per axis around the incumbent, then
/// shrinks the step by `shrink`.
inline Vector grid_minimize(const std::function<double(const Vector&)>& f, int d, double lo,
                            double hi, int coarse = 81, int half = 10, double shrink = 0.25,
                            double final_step = 1e-9) {
  Vector best = Vector::Zero(d);
  double best_val = std::numeric_limits<double>::infinity();
  Vector x(d);

  const double step0 = (hi - lo) / (coarse - 1);
  std::vector<int> idx(d, 0);
  for (;;) {
    for (int k = 0; k < d; ++k) x(k) = lo + step0 * idx[k];
    const double v = f(x);
    if (v < best_val) {
      best_val = v;
      best = x;
    }
    int k = 0;
    while (k < d && ++idx[k] == coarse) idx[k++] = 0;
    if (k == d) break;
  }

  for (double step = step0 * shrink; step > final_step; step *= shrink) {
    bool moved = true;
    while (moved) {
      moved = false;
      const Vector center = best;
      std::vector<int> off(d, -half);
      for (;;) {
        for (int k = 0; k < d; ++k) x(k) = center(k) + step * off[k];
        const double v = f(x);
        if (v < best_val) {
          best_val = v;
          best = x;
        }
        int k = 0;
        while (k < d && ++off[k] > half) off[k++] = -half;
        if (k == d) break;
      }
      // Re-scan at the same step if the incumbent landed on the window edge.
      for (int k = 0; k < d; ++k)
        if (std::abs(best(k) - center(k)) >= step * (half - 0.5)) moved = true;
    }
  }
  return best;
}

/// ||y - X b||^2 + lambda * sum |b_j|^q from raw data.
inline double bridge_objective(const Matrix& X, const Vector& y, double lambda, double q,
                               const Vector& b) {
  double pen = 0.0;
  for (int j = 0; j < b.size(); ++j)
    if (b(j) != 0.0) pen += std::pow(std::abs(b(j)), q);
  return (y - X * b).squaredNorm() + lambda * pen;
}

/// Brute-force minimizer of the bridge objective, optionally on the
/// hyperplane w'b = c by eliminating the coordinate with the largest |w_k|.
inline Vector brute_force_bridge(const Matrix& X, const Vector& y, double lambda, double q,
                                 const Vector* w = nullptr, double c = 0.0, double box = 5.0) {
  const int p = static_cast<int>(X.cols());
  if (!w) {
    return grid_minimize([&](const Vector& b) { return bridge_objective(X, y, lambda, q, b); }, p,
                         -box, box);
  }
  int k = 0;
  w->cwiseAbs().maxCoeff(&k);
  auto expand = [&](const Vector& free) {
    Vector b(p);
    double acc = c;
    for (int j = 0, i = 0; j < p; ++j) {
      if (j == k) continue;
      b(j) = free(i++);
      acc -= (*w)(j) * b(j);
    }
    b(k) = acc / (*w)(k);
    return b;
  };
  const Vector free = grid_minimize(
      [&](const Vector& v) { return bridge_objective(X, y, lambda, q, expand(v)); }, p - 1, -box,
      box);
  return expand(free);
}

/// Ridge through the normal equations, solved by column-pivoting QR.
inline Vector ridge(const Matrix& X, const Vector& y, double lambda) {
  Matrix A = X.transpose() * X;
  A.diagonal().array() += lambda;
  return A.colPivHouseholderQr().solve(X.transpose() * y);
}

/// Equality-constrained ridge: [C + lambda I, R'; R, 0] [b; mu] = [X'y; r].
inline Vector kkt_ridge(const Matrix& X, const Vector& y, double lambda, const Matrix& R,
                        const Vector& r) {
  const auto p = X.cols();
  const auto m = R.rows();
  Matrix K = Matrix::Zero(p + m, p + m);
  K.topLeftCorner(p, p) = X.transpose() * X;
  K.topLeftCorner(p, p).diagonal().array() += lambda;
  K.topRightCorner(p, m) = R.transpose();
  K.bottomLeftCorner(m, p) = R;
  Vector rhs(p + m);
  rhs << X.transpose() * y, r;
  return K.fullPivLu().solve(rhs).head(p);
}

/// argmin (b - b_hat)' S (b - b_hat) subject to w'b = c, p = 3, by eliminating
/// the coordinate with the largest |w_k| and solving the reduced 2x2 system.
inline Vector eliminate_qp(const Matrix& S, const Vector& b_hat, const Vector& w, double c) {
  const int p = static_cast<int>(S.rows());
  int k = 0;
  w.cwiseAbs().maxCoeff(&k);
  // b = T v + t0 parameterizes the hyperplane with v the free coordinates.
  Matrix T = Matrix::Zero(p, p - 1);
  Vector t0 = Vector::Zero(p);
  for (int j = 0, i = 0; j < p; ++j) {
    if (j == k) continue;
    T(j, i) = 1.0;
    T(k, i) = -w(j) / w(k);
    ++i;
  }
  t0(k) = c / w(k);
  const Matrix H = T.transpose() * S * T;
  const Vector g = T.transpose() * S * (b_hat - t0);
  return T * H.ldlt().solve(g) + t0;
}

}  // namespace oracle
