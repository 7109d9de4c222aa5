#include <rbridge/errors.hpp>
#include <rbridge/random.hpp>
#include <rbridge/selection.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace rbridge {

std::vector<double> CvGrid::default_qs() {
  std::vector<double> qs;
  for (int i = 1; i <= 8; ++i) qs.push_back(0.25 * i);
  return qs;
}

void CvGrid::validate(Index n) const {
  if (lambdas.size() == 0) throw InvalidArgument("lambda grid is empty");
  for (Index i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas(i) > 0.0) || !std::isfinite(lambdas(i)))
      throw InvalidArgument(fmt::format("lambda grid entry {} is not positive", lambdas(i)));
    if (i > 0 && !(lambdas(i) < lambdas(i - 1)))
      throw InvalidArgument("lambda grid must be strictly decreasing");
  }
  if (qs.empty()) throw InvalidArgument("q grid is empty");
  for (double q : qs)
    if (!(q > 0.0) || !std::isfinite(q))
      throw InvalidArgument(fmt::format("q grid entry {} is not positive", q));
  if (K < 2 || K > n)
    throw InvalidArgument(fmt::format("fold count K = {} must lie in [2, n = {}]", K, n));
}

std::vector<int> kfold_partition(Index n, int K, std::uint64_t seed) {
  if (K < 2 || K > n)
    throw InvalidArgument(fmt::format("fold count K = {} must lie in [2, n = {}]", K, n));
  std::vector<int> folds(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) folds[static_cast<std::size_t>(i)] = static_cast<int>(i % K);
  Rng rng(seed);
  std::shuffle(folds.begin(), folds.end(), rng);
  return folds;
}

CvResult cross_validate(const CvFitter& fitter, const Dataset& d, const CvGrid& grid,
                        std::uint64_t seed, CvNormalization norm) {
  grid.validate(d.n());
  return cross_validate(fitter, d, grid, kfold_partition(d.n(), grid.K, seed), seed, norm);
}

CvResult cross_validate(const CvFitter& fitter, const Dataset& d, const CvGrid& grid,
                        const std::vector<int>& folds, std::uint64_t seed, CvNormalization norm) {
  grid.validate(d.n());
  if (static_cast<Index>(folds.size()) != d.n())
    throw InvalidArgument(fmt::format("{} fold ids for {} observations", folds.size(), d.n()));
  std::vector<IndexList> test(static_cast<std::size_t>(grid.K));
  for (Index i = 0; i < d.n(); ++i) {
    const int f = folds[static_cast<std::size_t>(i)];
    if (f < 0 || f >= grid.K) throw InvalidArgument(fmt::format("fold id {} out of range", f));
    test[static_cast<std::size_t>(f)].push_back(i);
  }
  for (int k = 0; k < grid.K; ++k)
    if (test[static_cast<std::size_t>(k)].empty())
      throw InvalidArgument(fmt::format("fold {} is empty", k));

  const Index nl = grid.lambdas.size();
  const auto nq = static_cast<Index>(grid.qs.size());
  const double inf = std::numeric_limits<double>::infinity();
  Matrix sse = Matrix::Zero(nl, nq);
  Matrix scaled = Matrix::Zero(nl, nq);  // sum_k SSE_k / n_k, for fold_n
  std::vector<std::vector<bool>> failed(static_cast<std::size_t>(nl),
                                        std::vector<bool>(static_cast<std::size_t>(nq), false));

  for (int k = 0; k < grid.K; ++k) {
    const IndexList& te = test[static_cast<std::size_t>(k)];
    IndexList tr;
    for (Index i = 0; i < d.n(); ++i)
      if (folds[static_cast<std::size_t>(i)] != k) tr.push_back(i);
    const Matrix Xtr = d.X()(tr, Eigen::all);
    const Vector ytr = d.y()(tr);
    const Matrix Xte = d.X()(te, Eigen::all);
    const Vector yte = d.y()(te);
    const Gram train = Gram::from(Xtr, ytr);

    for (Index qi = 0; qi < nq; ++qi) {
      for (Index li = 0; li < nl; ++li) {
        auto&& bad = failed[static_cast<std::size_t>(li)][static_cast<std::size_t>(qi)];
        if (bad) continue;
        try {
          const Vector beta = fitter(train, grid.lambdas(li), grid.qs[static_cast<std::size_t>(qi)]);
          if (beta.size() != d.p() || !beta.allFinite()) {
            bad = true;
            continue;
          }
          const double e = (yte - Xte * beta).squaredNorm();
          sse(li, qi) += e;
          scaled(li, qi) += e / static_cast<double>(te.size());
        } catch (const Error&) {
          bad = true;
        }
      }
    }
  }

  CvResult res;
  res.lambdas = grid.lambdas;
  res.qs = grid.qs;
  res.fold_assignments = folds;
  res.seed = seed;
  res.K = grid.K;
  res.n = d.n();
  res.normalization = norm;
  res.held_out_sse = sse;
  res.cve = Matrix(nl, nq);
  const double kn = static_cast<double>(grid.K) * static_cast<double>(d.n());
  bool any = false;
  for (Index li = 0; li < nl; ++li) {
    for (Index qi = 0; qi < nq; ++qi) {
      if (failed[static_cast<std::size_t>(li)][static_cast<std::size_t>(qi)]) {
        res.cve(li, qi) = inf;
        res.held_out_sse(li, qi) = inf;
        ++res.failed_points;
        continue;
      }
      res.cve(li, qi) = norm == CvNormalization::full_n ? sse(li, qi) / kn
                                                        : scaled(li, qi) / grid.K;
      if (!any || res.cve(li, qi) < res.best_cve() ||
          (res.cve(li, qi) == res.best_cve() &&
           (li < res.best_lambda_index ||
            (li == res.best_lambda_index && res.qs[static_cast<std::size_t>(qi)] >
                                                res.best_q())))) {
        res.best_lambda_index = li;
        res.best_q_index = qi;
        any = true;
      }
    }
  }
  if (!any) throw SingularSystem("cross-validation failed at every grid point");
  return res;
}

Vector default_lambda_grid(const Gram& g, int count) {
  if (count < 2) throw InvalidArgument(fmt::format("lambda grid needs count >= 2, got {}", count));
  const double lmax = 2.0 * g.xty.lpNorm<Eigen::Infinity>();
  if (!(lmax > 0.0)) throw InvalidArgument("X'y is zero; the response is degenerate");
  Vector grid(count);
  for (int i = 0; i < count; ++i)
    grid(i) = lmax * std::pow(10.0, -4.0 * i / static_cast<double>(count - 1));
  grid(0) = lmax;
  grid(count - 1) = lmax * 1e-4;
  return grid;
}

Vector default_lambda_grid(const Dataset& d, int count) {
  return default_lambda_grid(Gram::from(d), count);
}

std::vector<CveRow> cve_surface(const CvResult& cv) {
  std::vector<CveRow> rows;
  for (Index qi = 0; qi < static_cast<Index>(cv.qs.size()); ++qi)
    for (Index li = 0; li < cv.lambdas.size(); ++li)
      rows.push_back({cv.qs[static_cast<std::size_t>(qi)], std::log(cv.lambdas(li)),
                      cv.cve(li, qi)});
  return rows;
}

std::pair<std::vector<CveRow>, CvResult> cve_surface(const Dataset& d, const CvGrid& grid,
                                                     const Restriction* rest, std::uint64_t seed,
                                                     const SolverOptions& opts) {
  const CvFitter fitter = [&](const Gram& train, double lambda, double q) -> Vector {
    const PenaltySpec pen = PenaltySpec::bridge(lambda, q);
    const FitResult fit = rest ? fit_rbridge(train, pen, *rest, opts) : fit_bridge(train, pen, opts);
    if (!fit.converged) throw SingularSystem("LQA did not converge");
    return fit.beta;
  };
  CvResult cv = cross_validate(fitter, d, grid, seed);
  return {cve_surface(cv), std::move(cv)};
}

}  // namespace rbridge
