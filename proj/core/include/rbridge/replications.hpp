#pragma once

#include <rbridge/estimators.hpp>
#include <rbridge/metrics.hpp>
#include <rbridge/simulation.hpp>

#include <cstdint>
#include <vector>

namespace rbridge {

struct ReplicationReport {
  std::vector<MetricsSummary> summaries;  // one per arm, in arm order
  /// raw_me[a][r]: model error of arm a in replication r; NaN where the arm failed.
  std::vector<std::vector<double>> raw_me;
  std::uint64_t seed = 0;
  int nreps = 0;
};

/// Replication r draws its data from seed ^ r; every arm sees the same
/// (X, y) and the same CV folds within a replication. `threads` <= 1 runs
/// serially; results do not depend on the worker count.
ReplicationReport run_replications(const Scenario& scenario, const std::vector<Arm>& arms,
                                   int nreps, std::uint64_t seed, const TuningOptions& tuning,
                                   int threads = 1);

/// Table arm list for a simulation example (1 or 2): LASSO, RIDGE, E-NET,
/// SCAD, ORACLE, BRIDGE, RBRIDGE1..4 with each RBRIDGE arm using the
/// restriction of the matching case.
std::vector<Arm> table_arms(int example, const Scenario& scenario);

}  // namespace rbridge
