#pragma once

#include <rbridge/metrics.hpp>
#include <rbridge/replications.hpp>
#include <rbridge/selection.hpp>
#include <rbridge/solver.hpp>
#include <rbridge/split_eval.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace rbridge {

/// {schema_version, seed, beta, active, iterations, converged, lambda, q,
///  family, objective_trace}. Active indices are 1-based.
std::string fit_result_json(const FitResult& fit, std::uint64_t seed);

/// CvResult with seed, fold assignment and tie-breaking rule.
std::string cv_result_json(const CvResult& cv);

/// Header `q,log_lambda,cve` after a `# ...` provenance line.
std::string cve_surface_csv(const std::vector<CveRow>& rows, std::uint64_t seed);

/// label,MME,C,IC,U-fit,C-fit,O-fit,nreps,failures
std::string summary_csv(const ReplicationReport& report);

/// One row per replication, one column per arm.
std::string raw_me_csv(const ReplicationReport& report, const std::vector<std::string>& labels);

/// label,MSE_y,RMSE_y,[MSE_<prior>,RMSE_<prior>]...,n_vars
std::string split_eval_csv(const SplitEvalReport& report);

/// Shortest round-trip decimal form used in every artifact.
std::string format_double(double v);

}  // namespace rbridge
