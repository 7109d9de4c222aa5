#include <rbridge/errors.hpp>
#include <rbridge/estimators.hpp>

#include <fmt/format.h>

#include <array>
#include <utility>

namespace rbridge {
namespace {

constexpr std::array<std::pair<ArmKind, const char*>, 8> kNames{{
    {ArmKind::lasso, "lasso"},
    {ArmKind::ridge, "ridge"},
    {ArmKind::enet, "enet"},
    {ArmKind::scad, "scad"},
    {ArmKind::oracle, "oracle"},
    {ArmKind::ols, "ols"},
    {ArmKind::bridge, "bridge"},
    {ArmKind::rbridge, "rbridge"},
}};

Vector converged_or_throw(const FitResult& fit) {
  if (!fit.converged) throw SingularSystem("fit did not converge");
  return fit.beta;
}

}  // namespace

std::string to_string(ArmKind k) {
  for (const auto& [kind, name] : kNames)
    if (kind == k) return name;
  return "?";
}

ArmKind arm_kind_from_string(const std::string& s) {
  for (const auto& [kind, name] : kNames)
    if (s == name) return kind;
  throw InvalidArgument(fmt::format("unknown estimator '{}'", s));
}

ArmFit fit_arm(const Arm& arm, const Dataset& train, const TuningOptions& tuning,
               const std::vector<int>& folds, std::uint64_t seed) {
  const Gram full = Gram::from(train);

  // Fit at one grid point; shape is q, alpha or a depending on the family.
  std::function<FitResult(const Gram&, double, double)> fit;
  std::vector<double> shapes{0.0};
  switch (arm.kind) {
    case ArmKind::oracle:
    case ArmKind::ols: {
      ArmFit out;
      out.beta = arm.kind == ArmKind::oracle ? ols(full, arm.support) : ols(full);
      return out;
    }
    case ArmKind::lasso:
      shapes = {1.0};
      fit = [&](const Gram& g, double l, double) { return fit_enet(g, l, 1.0, tuning.cd); };
      break;
    case ArmKind::ridge:
      shapes = {2.0};
      fit = [](const Gram& g, double l, double) { return fit_ridge(g, l); };
      break;
    case ArmKind::enet:
      shapes = tuning.enet_alphas;
      fit = [&](const Gram& g, double l, double a) { return fit_enet(g, l, a, tuning.cd); };
      break;
    case ArmKind::scad:
      shapes = {tuning.scad_a};
      fit = [&](const Gram& g, double l, double a) { return fit_scad(g, l, a, tuning.solver); };
      break;
    case ArmKind::bridge:
      shapes = tuning.fixed_q ? std::vector<double>{*tuning.fixed_q} : tuning.qs;
      fit = [&](const Gram& g, double l, double q) {
        return fit_bridge(g, PenaltySpec::bridge(l, q), tuning.solver);
      };
      break;
    case ArmKind::rbridge:
      if (!arm.restriction)
        throw InvalidArgument(fmt::format("arm '{}' needs a restriction", arm.label));
      shapes = tuning.fixed_q ? std::vector<double>{*tuning.fixed_q} : tuning.qs;
      fit = [&](const Gram& g, double l, double q) {
        return fit_rbridge(g, PenaltySpec::bridge(l, q), *arm.restriction, tuning.solver);
      };
      break;
  }

  double lambda = 0.0;
  double shape = shapes.front();
  if (tuning.fixed_lambda) {
    lambda = *tuning.fixed_lambda;
    if (shapes.size() > 1 && arm.kind != ArmKind::enet)
      throw InvalidArgument("a fixed lambda needs a fixed q for bridge arms");
  } else {
    CvGrid grid;
    grid.lambdas = default_lambda_grid(full, tuning.n_lambda);
    grid.qs = shapes;
    grid.K = tuning.K;
    const CvFitter fitter = [&](const Gram& g, double l, double s) {
      return converged_or_throw(fit(g, l, s));
    };
    const CvResult cv = cross_validate(fitter, train, grid, folds, seed, tuning.normalization);
    lambda = cv.best_lambda();
    shape = cv.best_q();
  }

  const FitResult result = fit(full, lambda, shape);
  ArmFit out;
  out.beta = result.beta;
  out.lambda = lambda;
  out.shape = shape;
  out.converged = result.converged;
  return out;
}

}  // namespace rbridge
