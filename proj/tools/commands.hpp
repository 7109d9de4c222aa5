#pragma once

#include "config.hpp"

namespace rbridge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitInfeasible = 3;

int run_fit(const RunConfig& config);
int run_cv(const RunConfig& config);
int run_simulate(const RunConfig& config);
int run_analyze(const RunConfig& config);
int run_check(const RunConfig& config);

}  // namespace rbridge::cli
