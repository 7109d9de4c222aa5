#include <rbridge/errors.hpp>
#include <rbridge/random.hpp>
#include <rbridge/replications.hpp>

#include <fmt/format.h>

#include <limits>
#include <thread>

namespace rbridge {
namespace {

struct ArmOutcome {
  bool ok = false;
  double me = std::numeric_limits<double>::quiet_NaN();
  SelectionOutcome selection;
};

std::vector<ArmOutcome> run_one(const Scenario& sc, const std::vector<Arm>& arms, const Matrix& cov,
                                const IndexList& support, std::uint64_t rep_seed,
                                const TuningOptions& tuning) {
  const Matrix X = gen_ar1_design(sc.n, sc.p, sc.rho, derive_seed(rep_seed, Stream::design));
  const Vector y = gen_response(X, sc.beta_true, sc.sigma, derive_seed(rep_seed, Stream::noise));
  const Dataset d(X, y);
  const std::uint64_t fold_seed = derive_seed(rep_seed, Stream::folds);
  const std::vector<int> folds = kfold_partition(sc.n, tuning.K, fold_seed);

  std::vector<ArmOutcome> out(arms.size());
  for (std::size_t a = 0; a < arms.size(); ++a) {
    try {
      const ArmFit fit = fit_arm(arms[a], d, tuning, folds, fold_seed);
      if (!fit.converged || !fit.beta.allFinite()) continue;
      out[a].ok = true;
      out[a].me = model_error(fit.beta, sc.beta_true, cov);
      out[a].selection = selection_metrics(fit.beta, support);
    } catch (const Error&) {
      // Counted as a failure for this arm and replication.
    }
  }
  return out;
}

}  // namespace

ReplicationReport run_replications(const Scenario& scenario, const std::vector<Arm>& arms,
                                   int nreps, std::uint64_t seed, const TuningOptions& tuning,
                                   int threads) {
  if (nreps < 1) throw InvalidArgument(fmt::format("nreps must be >= 1, got {}", nreps));
  if (arms.empty()) throw InvalidArgument("no estimators to run");
  const Matrix cov = scenario.covariance();
  const IndexList support = scenario.true_support();

  std::vector<std::vector<ArmOutcome>> results(static_cast<std::size_t>(nreps));
  auto work = [&](int first, int stride) {
    for (int r = first; r < nreps; r += stride)
      results[static_cast<std::size_t>(r)] =
          run_one(scenario, arms, cov, support, seed ^ static_cast<std::uint64_t>(r), tuning);
  };
  const int workers = std::max(1, std::min(threads, nreps));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    for (auto& t : pool) t.join();
  }

  ReplicationReport report;
  report.seed = seed;
  report.nreps = nreps;
  for (std::size_t a = 0; a < arms.size(); ++a) {
    std::vector<double> mes, raw;
    std::vector<SelectionOutcome> outcomes;
    int failures = 0;
    for (const auto& rep : results) {
      raw.push_back(rep[a].me);
      if (rep[a].ok) {
        mes.push_back(rep[a].me);
        outcomes.push_back(rep[a].selection);
      } else {
        ++failures;
      }
    }
    report.summaries.push_back(summarize(arms[a].label, mes, outcomes, failures));
    report.raw_me.push_back(std::move(raw));
  }
  return report;
}

std::vector<Arm> table_arms(int example, const Scenario& scenario) {
  if (example != 1 && example != 2)
    throw InvalidArgument(fmt::format("example must be 1 or 2, got {}", example));
  std::vector<Arm> arms{
      {"LASSO", ArmKind::lasso, std::nullopt, {}},
      {"RIDGE", ArmKind::ridge, std::nullopt, {}},
      {"E-NET", ArmKind::enet, std::nullopt, {}},
      {"SCAD", ArmKind::scad, std::nullopt, {}},
      {"ORACLE", ArmKind::oracle, std::nullopt, scenario.true_support()},
      {"BRIDGE", ArmKind::bridge, std::nullopt, {}},
  };
  for (int c = 1; c <= 4; ++c) {
    const Scenario s = example == 1
                           ? example1_scenario(c, scenario.n, scenario.sigma, scenario.rho)
                           : example2_scenario(c, scenario.p, scenario.sigma, scenario.rho);
    arms.push_back({fmt::format("RBRIDGE{}", c), ArmKind::rbridge, s.restriction, {}});
  }
  return arms;
}

}  // namespace rbridge
