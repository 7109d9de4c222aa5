#include <rbridge/baselines.hpp>
#include <rbridge/errors.hpp>

#include <fmt/format.h>

#include <cmath>

namespace rbridge {
namespace {

double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

void check_lambda(double lambda, const char* who) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw InvalidArgument(fmt::format("{}: lambda must be finite and >= 0, got {}", who, lambda));
}

}  // namespace

void CdOptions::validate() const {
  if (!(tol > 0.0)) throw InvalidArgument(fmt::format("cd tol must be > 0, got {}", tol));
  if (max_sweeps < 1)
    throw InvalidArgument(fmt::format("cd max_sweeps must be >= 1, got {}", max_sweeps));
}

FitResult fit_ridge(const Gram& g, double lambda) {
  check_lambda(lambda, "fit_ridge");
  if (!(lambda > 0.0)) throw InvalidArgument("fit_ridge: lambda must be > 0");
  FitResult fit;
  fit.penalty = PenaltySpec::bridge(lambda, 2.0);
  Matrix A = g.xtx;
  A.diagonal().array() += lambda;
  fit.beta = spd_solve(A, g.xty, "ridge");
  for (Index j = 0; j < g.p(); ++j) fit.active.push_back(j);
  fit.iterations = 1;
  fit.converged = true;
  fit.objective_trace.push_back(penalized_objective(g, fit.penalty, fit.beta));
  return fit;
}

FitResult fit_ridge(const Dataset& d, double lambda) { return fit_ridge(Gram::from(d), lambda); }

FitResult fit_enet(const Gram& g, double lambda, double alpha, const CdOptions& opts) {
  opts.validate();
  check_lambda(lambda, "fit_enet");
  FitResult fit;
  fit.penalty = PenaltySpec::elastic_net(lambda, alpha);

  const Index p = g.p();
  const double l1 = 0.5 * lambda * alpha;
  const double l2 = lambda * (1.0 - alpha);
  Vector beta = Vector::Zero(p);
  Vector cb = Vector::Zero(p);  // C_n beta, kept in sync with beta

  for (int sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
    double max_change = 0.0;
    for (Index j = 0; j < p; ++j) {
      const double cjj = g.xtx(j, j);
      const double denom = cjj + l2;
      const double rho = g.xty(j) - cb(j) + cjj * beta(j);
      const double next = denom > 0.0 ? soft_threshold(rho, l1) / denom : 0.0;
      const double delta = next - beta(j);
      if (delta != 0.0) {
        cb.noalias() += delta * g.xtx.col(j);
        beta(j) = next;
        max_change = std::max(max_change, std::abs(delta));
      }
    }
    fit.iterations = sweep;
    fit.objective_trace.push_back(penalized_objective(g, fit.penalty, beta));
    if (max_change < opts.tol) {
      fit.converged = true;
      break;
    }
  }
  if (!beta.allFinite()) throw SingularSystem("coordinate descent produced non-finite values");
  for (Index j = 0; j < p; ++j)
    if (beta(j) != 0.0) fit.active.push_back(j);
  fit.beta = std::move(beta);
  return fit;
}

FitResult fit_enet(const Dataset& d, double lambda, double alpha, const CdOptions& opts) {
  return fit_enet(Gram::from(d), lambda, alpha, opts);
}

double scad_derivative(double t, double lambda, double a) {
  t = std::abs(t);
  if (t <= lambda) return lambda;
  return std::max(a * lambda - t, 0.0) / (a - 1.0);
}

double scad_penalty(double t, double lambda, double a) {
  t = std::abs(t);
  if (t <= lambda) return lambda * t;
  if (t <= a * lambda) return -(t * t - 2.0 * a * lambda * t + lambda * lambda) / (2.0 * (a - 1.0));
  return 0.5 * (a + 1.0) * lambda * lambda;
}

Vector scad_weights(const Vector& beta_local, double lambda, double a) {
  Vector w(beta_local.size());
  for (Index j = 0; j < beta_local.size(); ++j) {
    const double t = std::abs(beta_local(j));
    if (t == 0.0)
      throw InvalidArgument(
          fmt::format("scad_weights: beta_{} is zero; prune before forming weights", j + 1));
    w(j) = scad_derivative(t, lambda, a) / (2.0 * t);
  }
  return w;
}

FitResult fit_scad(const Gram& g, double lambda, double a, const SolverOptions& opts) {
  return fit_lqa(g, PenaltySpec::scad(lambda, a), nullptr, opts);
}

FitResult fit_scad(const Dataset& d, double lambda, double a, const SolverOptions& opts) {
  return fit_scad(Gram::from(d), lambda, a, opts);
}

}  // namespace rbridge
