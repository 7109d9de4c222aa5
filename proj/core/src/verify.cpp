#include <rbridge/baselines.hpp>
#include <rbridge/errors.hpp>
#include <rbridge/metrics.hpp>
#include <rbridge/random.hpp>
#include <rbridge/verify.hpp>

#include <fmt/format.h>

#include <cmath>

namespace rbridge {
namespace {

double relative(const Vector& a, const Vector& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

// Equality-constrained ridge by the bordered system [C + lambda I, R'; R, 0].
Vector kkt_ridge(const Gram& g, double lambda, const Restriction& rest) {
  const Index p = g.p();
  const Index m = rest.m();
  Matrix K = Matrix::Zero(p + m, p + m);
  K.topLeftCorner(p, p) = g.xtx;
  K.topLeftCorner(p, p).diagonal().array() += lambda;
  K.topRightCorner(p, m) = rest.R().transpose();
  K.bottomLeftCorner(m, p) = rest.R();
  Vector rhs(p + m);
  rhs << g.xty, rest.r();
  return K.partialPivLu().solve(rhs).head(p);
}

}  // namespace

MseCheckResult mse_formula_check(const MseCheckSetup& s, int draws) {
  if (draws < 2) throw InvalidArgument("mse_formula_check needs at least two draws");
  if (s.p < 2) throw InvalidArgument("mse_formula_check needs p >= 2");
  const Matrix X = gen_ar1_design(s.n, s.p, s.rho, derive_seed(s.seed, Stream::design));
  Vector beta(s.p);
  for (Index j = 0; j < s.p; ++j) beta(j) = (j % 2 ? -1.0 : 1.0) * (1.0 + 0.5 * static_cast<double>(j));
  const Restriction rest(Matrix::Ones(1, s.p), Vector::Constant(1, beta.sum()));

  const Gram g = Gram::from(X, Vector::Zero(s.n));
  const LqaSystem sys(g.xtx, penalty_weights(beta, s.lambda, s.q));
  const Vector xb = X * beta;

  Rng rng(derive_seed(s.seed, Stream::noise));
  std::normal_distribution<double> normal;
  const Eigen::LLT<Matrix> llt(sys.S());
  double total = 0.0;
  Vector y(s.n);
  for (int d = 0; d < draws; ++d) {
    for (Index i = 0; i < s.n; ++i) y(i) = xb(i) + s.sigma * normal(rng);
    const Vector b_hat = llt.solve(X.transpose() * y);
    total += (restricted_correction(b_hat, sys, rest) - beta).squaredNorm();
  }

  MseCheckResult out;
  out.draws = draws;
  out.empirical = total / draws;
  out.analytic = analytic_mse(sys, rest, beta, s.sigma * s.sigma);
  out.bound = analytic_mse_bound(sys, rest, beta, s.sigma * s.sigma);
  out.relative_gap = std::abs(out.empirical - out.analytic) / out.analytic;
  return out;
}

double LambdaRule::operator()(double n) const { return coefficient * std::pow(n, exponent); }

bool LambdaRule::is_o_of_n() const { return coefficient == 0.0 || exponent < 1.0; }

std::string LambdaRule::describe() const {
  return fmt::format("lambda_n = {} * n^{}", coefficient, exponent);
}

ConsistencyCurve consistency_experiment(const std::vector<Index>& ns, const LambdaRule& rule,
                                        const Scenario& scenario, double q, int nreps,
                                        std::uint64_t seed, const SolverOptions& opts) {
  if (ns.size() < 2) throw InvalidArgument("consistency_experiment needs at least two sizes");
  if (nreps < 1) throw InvalidArgument("nreps must be >= 1");
  for (std::size_t i = 1; i < ns.size(); ++i)
    if (ns[i] <= ns[i - 1]) throw InvalidArgument("sample sizes must be strictly increasing");

  ConsistencyCurve curve;
  curve.ns = ns;
  curve.hypothesis_holds = rule.is_o_of_n();
  int failures = 0;
  for (Index n : ns) {
    const double lambda = rule(static_cast<double>(n));
    curve.lambdas.push_back(lambda);
    const PenaltySpec pen = PenaltySpec::bridge(lambda, q);
    std::vector<double> errors;
    for (int r = 0; r < nreps; ++r) {
      const std::uint64_t rs = derive_seed(seed ^ static_cast<std::uint64_t>(r),
                                           static_cast<std::uint64_t>(n) << 8);
      const Matrix X =
          gen_ar1_design(n, scenario.p, scenario.rho, derive_seed(rs, Stream::design));
      const Vector y =
          gen_response(X, scenario.beta_true, scenario.sigma, derive_seed(rs, Stream::noise));
      try {
        const FitResult fit = fit_rbridge(Gram::from(X, y), pen, scenario.restriction, opts);
        if (!fit.converged) {
          ++failures;
          continue;
        }
        errors.push_back((fit.beta - scenario.beta_true).squaredNorm());
      } catch (const Error&) {
        ++failures;
      }
    }
    curve.median_error.push_back(median(errors));
  }

  const std::size_t k = curve.median_error.size();
  double concordance = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (i > 0 && curve.median_error[i] < curve.median_error[i - 1]) ++curve.decreasing_steps;
    for (std::size_t j = i + 1; j < k; ++j) {
      const double d = curve.median_error[j] - curve.median_error[i];
      concordance += d > 0 ? 1.0 : (d < 0 ? -1.0 : 0.0);
    }
  }
  curve.kendall_tau = concordance / (0.5 * static_cast<double>(k * (k - 1)));

  curve.annotation = rule.describe();
  if (!curve.hypothesis_holds) curve.annotation += "; lambda_n / n does not vanish, hypothesis violated";
  if (failures > 0) curve.annotation += fmt::format("; {} failed fits excluded", failures);
  return curve;
}

EquivalenceCheck oracle_equivalence_check(double q, int instances, std::uint64_t seed) {
  if (instances < 1) throw InvalidArgument("instances must be >= 1");
  if (q != 1.0 && q != 2.0)
    throw InvalidArgument(fmt::format("oracle equivalence is defined for q = 1 or 2, got {}", q));

  EquivalenceCheck out;
  out.instances = instances;
  Rng rng(seed);
  std::uniform_int_distribution<int> pick_p(2, q == 2.0 ? 8 : 5);
  std::uniform_int_distribution<int> pick_n(10, 60);
  std::uniform_real_distribution<double> log_lambda(std::log(0.1), std::log(20.0));
  std::normal_distribution<double> normal;

  for (int t = 0; t < instances; ++t) {
    const Index p = pick_p(rng);
    const Index n = pick_n(rng);
    const double lambda = std::exp(log_lambda(rng));
    const std::uint64_t s = rng();
    const Matrix X = gen_ar1_design(n, p, 0.5, derive_seed(s, Stream::design));
    Vector beta(p);
    for (Index j = 0; j < p; ++j) beta(j) = j % 2 ? 0.0 : 2.0 * normal(rng);
    const Vector y = gen_response(X, beta, 1.0, derive_seed(s, Stream::noise));
    const Gram g = Gram::from(X, y);

    if (q == 2.0) {
      const PenaltySpec pen = PenaltySpec::bridge(lambda, 2.0);
      out.gap = std::max(out.gap, relative(fit_bridge(g, pen).beta, fit_ridge(g, lambda).beta));
      Matrix R(1, p);
      for (Index j = 0; j < p; ++j) R(0, j) = normal(rng);
      const Restriction rest(R, Vector::Constant(1, normal(rng)));
      out.gap = std::max(out.gap, relative(fit_rbridge(g, pen, rest).beta, kkt_ridge(g, lambda, rest)));
    } else {
      CdOptions cd;
      cd.tol = 1e-12;
      const FitResult lqa = fit_bridge(g, PenaltySpec::bridge(lambda, 1.0));
      const FitResult lasso = fit_enet(g, lambda, 1.0, cd);
      out.gap = std::max(out.gap, (lqa.beta - lasso.beta).lpNorm<Eigen::Infinity>());
    }
  }
  out.tolerance = q == 2.0 ? 1e-8 : 1e-4;
  out.passed = out.gap <= out.tolerance;
  out.description = q == 2.0
                        ? "LQA bridge and restricted bridge at q = 2 against ridge and KKT solves"
                        : "LQA bridge at q = 1 against coordinate-descent LASSO";
  return out;
}

}  // namespace rbridge
