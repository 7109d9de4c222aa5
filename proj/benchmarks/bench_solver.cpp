#include <rbridge/baselines.hpp>
#include <rbridge/estimators.hpp>
#include <rbridge/random.hpp>
#include <rbridge/simulation.hpp>
#include <rbridge/solver.hpp>

#include <benchmark/benchmark.h>

namespace {

using namespace rbridge;

Dataset ex1_data(std::uint64_t seed) {
  const Scenario sc = example1_scenario(1, 40, 1.0, 0.5);
  const Matrix X = gen_ar1_design(sc.n, sc.p, sc.rho, derive_seed(seed, Stream::design));
  return Dataset(X, gen_response(X, sc.beta_true, sc.sigma, derive_seed(seed, Stream::noise)));
}

void BM_FitBridge(benchmark::State& state) {
  const Gram g = Gram::from(ex1_data(1));
  const PenaltySpec pen = PenaltySpec::bridge(5.0, static_cast<double>(state.range(0)) / 4.0);
  for (auto _ : state) benchmark::DoNotOptimize(fit_bridge(g, pen));
}
BENCHMARK(BM_FitBridge)->DenseRange(1, 8);

void BM_FitRbridgeCase4(benchmark::State& state) {
  const Gram g = Gram::from(ex1_data(2));
  const Scenario sc = example1_scenario(4, 40, 1.0, 0.5);
  const PenaltySpec pen = PenaltySpec::bridge(5.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(fit_rbridge(g, pen, sc.restriction));
}
BENCHMARK(BM_FitRbridgeCase4);

void BM_FitEnetLasso(benchmark::State& state) {
  const Gram g = Gram::from(ex1_data(3));
  for (auto _ : state) benchmark::DoNotOptimize(fit_enet(g, 5.0, 1.0));
}
BENCHMARK(BM_FitEnetLasso);

void BM_TunedArm(benchmark::State& state) {
  const Dataset d = ex1_data(4);
  const Scenario sc = example1_scenario(1, 40, 1.0, 0.5);
  const Arm arm = state.range(0) == 0 ? Arm{"BRIDGE", ArmKind::bridge, std::nullopt, {}}
                                      : Arm{"RBRIDGE1", ArmKind::rbridge, sc.restriction, {}};
  const TuningOptions tuning;
  const auto folds = kfold_partition(d.n(), tuning.K, 7);
  for (auto _ : state) benchmark::DoNotOptimize(fit_arm(arm, d, tuning, folds, 7));
}
BENCHMARK(BM_TunedArm)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Ex2Rbridge(benchmark::State& state) {
  const Scenario sc = example2_scenario(1, 100, 1.0, 0.5);
  const Matrix X = gen_ar1_design(sc.n, sc.p, sc.rho, 11);
  const Gram g = Gram::from(X, gen_response(X, sc.beta_true, sc.sigma, 12));
  const PenaltySpec pen = PenaltySpec::bridge(10.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(fit_rbridge(g, pen, sc.restriction));
}
BENCHMARK(BM_Ex2Rbridge)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
