#pragma once

#include <rbridge/dataset.hpp>
#include <rbridge/linalg.hpp>
#include <rbridge/restriction.hpp>
#include <rbridge/solver.hpp>

#include <cstdint>
#include <functional>
#include <vector>

namespace rbridge {

/// Joint tuning grid. `qs` is the second penalty axis: the bridge exponent,
/// or alpha for the elastic net, or a single placeholder for one-parameter
/// families.
struct CvGrid {
  Vector lambdas;          // strictly positive, descending
  std::vector<double> qs;  // all > 0
  int K = 10;

  /// 0.25, 0.50, ..., 2.00
  static std::vector<double> default_qs();

  void validate(Index n) const;
};

enum class CvNormalization {
  full_n,  // PE_k = SSE_k / n, as in the original procedure
  fold_n,  // PE_k = SSE_k / n_k
};

struct CvResult {
  Matrix cve;             // |lambdas| x |qs|; +inf where every fold failed or a fit threw
  Matrix held_out_sse;    // total held-out squared error per grid point
  Vector lambdas;
  std::vector<double> qs;
  Index best_lambda_index = 0;
  Index best_q_index = 0;
  std::vector<int> fold_assignments;
  std::uint64_t seed = 0;
  int K = 0;
  Index n = 0;
  Index failed_points = 0;
  CvNormalization normalization = CvNormalization::full_n;

  double best_lambda() const { return lambdas(best_lambda_index); }
  double best_q() const { return qs[static_cast<std::size_t>(best_q_index)]; }
  double best_cve() const { return cve(best_lambda_index, best_q_index); }
};

/// Fits on training statistics at (lambda, q) and returns the full-length
/// coefficient vector. Throwing marks the grid point as failed.
using CvFitter = std::function<Vector(const Gram& train, double lambda, double q)>;

/// Fold id in [0, K) for each of n observations. Fold sizes differ by at most
/// one; the assignment is a deterministic function of the seed.
std::vector<int> kfold_partition(Index n, int K, std::uint64_t seed);

CvResult cross_validate(const CvFitter& fitter, const Dataset& d, const CvGrid& grid,
                        std::uint64_t seed, CvNormalization norm = CvNormalization::full_n);

/// Variant with a caller-supplied fold assignment; `seed` is only recorded.
CvResult cross_validate(const CvFitter& fitter, const Dataset& d, const CvGrid& grid,
                        const std::vector<int>& folds, std::uint64_t seed,
                        CvNormalization norm = CvNormalization::full_n);

/// Log-spaced grid from 2 ||X'y||_inf down to 1e-4 of that.
Vector default_lambda_grid(const Gram& g, int count);
Vector default_lambda_grid(const Dataset& d, int count);

struct CveRow {
  double q = 0.0;
  double log_lambda = 0.0;
  double cve = 0.0;
};

/// One row per grid point, q-major.
std::vector<CveRow> cve_surface(const CvResult& cv);

/// Runs cross-validation for the (restricted) bridge over `grid` and returns
/// the surface alongside the CV result.
std::pair<std::vector<CveRow>, CvResult> cve_surface(const Dataset& d, const CvGrid& grid,
                                                     const Restriction* rest, std::uint64_t seed,
                                                     const SolverOptions& opts = {});

}  // namespace rbridge
