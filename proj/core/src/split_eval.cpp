#include <rbridge/errors.hpp>
#include <rbridge/metrics.hpp>
#include <rbridge/random.hpp>
#include <rbridge/split_eval.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rbridge {
namespace {

constexpr int kMaxResamples = 100;

struct Split {
  Dataset train;
  Dataset test;
};

// Half/half split with training standardization, retried on constant columns.
Split draw_split(const Dataset& d, std::uint64_t split_seed, ScaleConvention conv,
                 int& resampled) {
  const Index n_train = (d.n() + 1) / 2;
  for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
    IndexList order(static_cast<std::size_t>(d.n()));
    std::iota(order.begin(), order.end(), Index{0});
    Rng rng(derive_seed(split_seed, static_cast<std::uint64_t>(attempt)));
    std::shuffle(order.begin(), order.end(), rng);
    IndexList tr(order.begin(), order.begin() + n_train);
    IndexList te(order.begin() + n_train, order.end());
    std::sort(tr.begin(), tr.end());
    std::sort(te.begin(), te.end());
    try {
      auto [train, rec] = standardize(d.subset(tr), conv);
      Dataset test = apply_standardization(d.subset(te), rec);
      return Split{std::move(train), std::move(test)};
    } catch (const InvalidArgument&) {
      ++resampled;
    }
  }
  throw InvalidArgument(
      fmt::format("no split with non-constant training columns after {} attempts", kMaxResamples));
}

double median_finite(const std::vector<double>& v) {
  std::vector<double> kept;
  for (double x : v)
    if (std::isfinite(x)) kept.push_back(x);
  return median(std::move(kept));
}

}  // namespace

int default_split_reps(const Dataset& d) { return d.n() > d.p() ? 500 : 100; }

std::vector<double> relative_to_min(const std::vector<double>& values) {
  double lo = std::numeric_limits<double>::infinity();
  for (double v : values)
    if (std::isfinite(v)) lo = std::min(lo, v);
  std::vector<double> out;
  for (double v : values)
    out.push_back(std::isfinite(v) && std::isfinite(lo) ? v / lo
                                                         : std::numeric_limits<double>::quiet_NaN());
  return out;
}

SplitEvalReport split_evaluate(const Dataset& d, const std::vector<Arm>& arms,
                               const std::vector<Prior>& priors, int nreps, std::uint64_t seed,
                               const TuningOptions& tuning, ScaleConvention convention) {
  if (d.n() < 4) throw InvalidArgument(fmt::format("split evaluation needs n >= 4, got {}", d.n()));
  if (nreps < 1) throw InvalidArgument(fmt::format("nreps must be >= 1, got {}", nreps));
  if (arms.empty()) throw InvalidArgument("no estimators to evaluate");
  if (d.standardized()) throw InvalidArgument("split evaluation expects raw, unstandardized data");

  std::vector<const Prior*> targets;
  SplitEvalReport report;
  for (const auto& prior : priors) {
    if (prior.restriction.p() != d.p())
      throw InvalidArgument(fmt::format("prior '{}' has p = {} but the data has p = {}",
                                        prior.label, prior.restriction.p(), d.p()));
    if (prior.beta_prior) {
      targets.push_back(&prior);
      report.prior_labels.push_back(prior.label);
    }
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  const std::size_t na = arms.size();
  std::vector<std::vector<double>> err_y(na), n_vars(na);
  std::vector<std::vector<std::vector<double>>> err_b(na,
                                                      std::vector<std::vector<double>>(targets.size()));

  for (int r = 0; r < nreps; ++r) {
    const std::uint64_t rs = seed ^ static_cast<std::uint64_t>(r);
    const Split split = draw_split(d, derive_seed(rs, Stream::split), convention,
                                   report.resampled_splits);
    const std::uint64_t fold_seed = derive_seed(rs, Stream::folds);
    const std::vector<int> folds = kfold_partition(split.train.n(), tuning.K, fold_seed);
    for (std::size_t a = 0; a < na; ++a) {
      Vector beta;
      try {
        const ArmFit fit = fit_arm(arms[a], split.train, tuning, folds, fold_seed);
        if (fit.converged && fit.beta.allFinite()) beta = fit.beta;
      } catch (const Error&) {
      }
      if (beta.size() == 0) {
        err_y[a].push_back(nan);
        n_vars[a].push_back(nan);
        for (auto& e : err_b[a]) e.push_back(nan);
        continue;
      }
      err_y[a].push_back((split.test.y() - split.test.X() * beta).squaredNorm());
      n_vars[a].push_back(static_cast<double>((beta.array() != 0.0).count()));
      for (std::size_t t = 0; t < targets.size(); ++t)
        err_b[a][t].push_back((*targets[t]->beta_prior - beta).squaredNorm());
    }
  }

  report.nreps = nreps;
  report.seed = seed;
  std::vector<double> col_y;
  std::vector<std::vector<double>> col_b(targets.size());
  for (std::size_t a = 0; a < na; ++a) {
    SplitEvalRow row;
    row.label = arms[a].label;
    row.mse_y = median_finite(err_y[a]);
    row.n_vars = median_finite(n_vars[a]);
    col_y.push_back(row.mse_y);
    for (std::size_t t = 0; t < targets.size(); ++t) {
      row.mse_beta0.push_back(median_finite(err_b[a][t]));
      col_b[t].push_back(row.mse_beta0.back());
    }
    report.rows.push_back(std::move(row));
  }
  const auto rel_y = relative_to_min(col_y);
  for (std::size_t a = 0; a < na; ++a) report.rows[a].rmse_y = rel_y[a];
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const auto rel = relative_to_min(col_b[t]);
    for (std::size_t a = 0; a < na; ++a) report.rows[a].rmse_beta0.push_back(rel[a]);
  }
  return report;
}

}  // namespace rbridge
