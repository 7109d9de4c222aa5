#include <rbridge/baselines.hpp>
#include <rbridge/errors.hpp>
#include <rbridge/solver.hpp>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <cmath>

namespace rbridge {
namespace {

constexpr double kZeroRowTol = 1e-10;
constexpr double kDependentTol = 1e-10;

using Llt = Eigen::LLT<Matrix>;

Llt factor(const Matrix& S, const char* what) { return spd_factor(S, what); }

Vector correct(const Vector& beta_hat, const Llt& s_llt, const Matrix& R, const Vector& r) {
  if (R.rows() == 0) return beta_hat;
  const Matrix sinv_rt = s_llt.solve(R.transpose());
  const Matrix A = R * sinv_rt;
  Llt a_llt(A);
  if (a_llt.info() != Eigen::Success) {
    const IndexList dep = dependent_rows(R, kDependentTol);
    std::vector<Index> shown;
    for (Index k : dep) shown.push_back(k + 1);
    throw SingularSystem(fmt::format("R S^-1 R' is singular; dependent restriction row(s): {}",
                                     shown.empty() ? std::string("?")
                                                   : fmt::format("{}", fmt::join(shown, ", "))));
  }
  Vector beta = beta_hat - sinv_rt * a_llt.solve(R * beta_hat - r);
  // One refinement pass absorbs the rounding left by badly scaled weights.
  const Vector resid = R * beta - r;
  if (resid.lpNorm<Eigen::Infinity>() > 1e-12 * (1.0 + r.lpNorm<Eigen::Infinity>()))
    beta -= sinv_rt * a_llt.solve(resid);
  if (!beta.allFinite()) throw SingularSystem("restricted correction produced non-finite values");
  return beta;
}

Vector lqa_weights(const PenaltySpec& pen, const Vector& beta_local, double eta) {
  return std::visit(
      [&](const auto& f) -> Vector {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, BridgeFamily>) {
          return penalty_weights(beta_local, pen.lambda(), f.q, eta);
        } else if constexpr (std::is_same_v<F, ScadFamily>) {
          return scad_weights(beta_local, pen.lambda(), f.a);
        } else {
          throw InvalidArgument("the LQA solver handles bridge and SCAD penalties only");
        }
      },
      pen.family());
}

IndexList surviving(const Vector& beta, const IndexList& active, double eta) {
  IndexList out;
  for (Index j : active)
    if (std::abs(beta(j)) >= eta) out.push_back(j);
  return out;
}

// One update on `active`, which has already been pruned against `beta`.
Vector update(const Gram& g, const PenaltySpec& pen, const Restriction* rest, const Vector& beta,
              const IndexList& active, double eta) {
  Vector next = Vector::Zero(g.p());
  if (active.empty()) {
    if (rest) reduce_restriction(rest->R(), rest->r(), active);
    return next;
  }
  const Vector w = lqa_weights(pen, take(beta, active), eta);
  Matrix S = take(g.xtx, active, active);
  S.diagonal() += w;
  const Llt llt = factor(S, "LQA system");
  Vector b = llt.solve(take(g.xty, active));
  if (rest) {
    const ReducedRestriction red = reduce_restriction(rest->R(), rest->r(), active);
    b = correct(b, llt, red.R, red.r);
  }
  if (!b.allFinite()) throw SingularSystem("LQA update produced non-finite values");
  for (std::size_t i = 0; i < active.size(); ++i) next(active[i]) = b(static_cast<Index>(i));
  return next;
}

IndexList all_columns(Index p) {
  IndexList out(static_cast<std::size_t>(p));
  for (Index j = 0; j < p; ++j) out[static_cast<std::size_t>(j)] = j;
  return out;
}

void check_gram(const Gram& g) {
  if (g.xtx.rows() != g.xtx.cols() || g.xty.size() != g.xtx.rows())
    throw InvalidArgument("Gram statistics have inconsistent dimensions");
}

// M = S^-1 - S^-1 R'(R S^-1 R')^-1 R S^-1 for the one-step estimator.
Matrix projector(const LqaSystem& sys, const Restriction& rest, const Vector& beta_true) {
  const Index p = sys.gram.rows();
  if (rest.p() != p || beta_true.size() != p)
    throw InvalidArgument("analytic_mse: dimensions of system, restriction and beta disagree");
  if (rest.residual_inf(beta_true) > 1e-8)
    throw InvalidArgument(fmt::format(
        "analytic_mse: beta_true violates the restriction (residual {})",
        rest.residual_inf(beta_true)));
  const Llt llt = factor(sys.S(), "analytic_mse");
  const Matrix sinv = llt.solve(Matrix::Identity(p, p));
  const Matrix sinv_rt = sinv * rest.R().transpose();
  const Llt a_llt = factor(rest.R() * sinv_rt, "analytic_mse R S^-1 R'");
  Matrix M = sinv - sinv_rt * a_llt.solve(sinv_rt.transpose());
  return 0.5 * (M + M.transpose());
}

}  // namespace

void SolverOptions::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta))
    throw InvalidArgument(fmt::format("eta must be > 0, got {}", eta));
  if (max_iter < 1) throw InvalidArgument(fmt::format("max_iter must be >= 1, got {}", max_iter));
  if (const auto* r = std::get_if<RidgeInit>(&init))
    if (!(r->lambda > 0.0) || !std::isfinite(r->lambda))
      throw InvalidArgument(fmt::format("ridge init lambda must be > 0, got {}", r->lambda));
  if (const auto* v = std::get_if<Vector>(&init))
    if (!v->allFinite()) throw InvalidArgument("initial vector has non-finite entries");
}

Index FitResult::n_selected() const { return (beta.array() != 0.0).count(); }

LqaSystem::LqaSystem(Matrix gram_, Vector weights_)
    : gram(std::move(gram_)), weights(std::move(weights_)) {
  if (gram.rows() != gram.cols() || weights.size() != gram.rows())
    throw InvalidArgument("LqaSystem: gram must be square and match the weight length");
  if ((weights.array() < 0.0).any() || !weights.allFinite())
    throw InvalidArgument("LqaSystem: weights must be finite and >= 0");
}

Matrix LqaSystem::S() const {
  Matrix S = gram;
  S.diagonal() += weights;
  return S;
}

Vector penalty_weights(const Vector& beta_local, double lambda, double q, double eta) {
  if (!(lambda >= 0.0)) throw InvalidArgument("penalty_weights: lambda must be >= 0");
  if (!(q > 0.0)) throw InvalidArgument("penalty_weights: q must be > 0");
  Vector w(beta_local.size());
  for (Index j = 0; j < beta_local.size(); ++j) {
    const double t = std::abs(beta_local(j));
    if (q < 2.0 && t < eta)
      throw InvalidArgument(fmt::format(
          "penalty_weights: |beta_{}| = {} is below eta = {}; prune before forming weights", j + 1,
          t, eta));
    w(j) = q == 2.0 ? lambda : 0.5 * lambda * q * std::pow(t, q - 2.0);
  }
  return w;
}

Vector restricted_correction(const Vector& beta_hat, const LqaSystem& sys, const Matrix& R,
                             const Vector& r) {
  if (beta_hat.size() != sys.gram.rows() || R.cols() != beta_hat.size() || r.size() != R.rows())
    throw InvalidArgument("restricted_correction: dimension mismatch");
  return correct(beta_hat, factor(sys.S(), "restricted_correction"), R, r);
}

Vector restricted_correction(const Vector& beta_hat, const LqaSystem& sys,
                             const Restriction& rest) {
  return restricted_correction(beta_hat, sys, rest.R(), rest.r());
}

ReducedRestriction reduce_restriction(const Matrix& R, const Vector& r, const IndexList& active) {
  const Matrix Ra = take_cols(R, active);

  IndexList kept;
  for (Index k = 0; k < Ra.rows(); ++k) {
    const double full = R.row(k).lpNorm<Eigen::Infinity>();
    if (Ra.rows() > 0 && Ra.cols() > 0 &&
        Ra.row(k).lpNorm<Eigen::Infinity>() > kZeroRowTol * full) {
      kept.push_back(k);
    } else if (std::abs(r(k)) > kZeroRowTol) {
      throw InfeasibleRestriction(fmt::format(
          "restriction row {} has no unpruned columns left but right-hand side {}", k + 1, r(k)));
    }
  }

  ReducedRestriction out;
  if (kept.empty()) {
    out.R = Matrix(0, static_cast<Index>(active.size()));
    out.r = Vector(0);
    return out;
  }

  Matrix Rk = Ra(kept, Eigen::all);
  Vector rk = r(kept);
  const IndexList dep = dependent_rows(Rk, kDependentTol);
  if (dep.empty()) {
    out.R = std::move(Rk);
    out.r = std::move(rk);
    out.rows = std::move(kept);
    return out;
  }

  IndexList indep;
  for (Index k = 0, d = 0; k < Rk.rows(); ++k) {
    if (d < static_cast<Index>(dep.size()) && dep[static_cast<std::size_t>(d)] == k) {
      ++d;
    } else {
      indep.push_back(k);
    }
  }
  const Matrix Ri = Rk(indep, Eigen::all);
  const Vector ri = rk(indep);
  const auto qr = Ri.transpose().colPivHouseholderQr();
  const double scale = 1.0 + r.lpNorm<Eigen::Infinity>();
  for (Index k : dep) {
    const Vector c = qr.solve(Vector(Rk.row(k).transpose()));
    const double implied = c.dot(ri);
    if (std::abs(implied - rk(k)) > 1e-8 * scale)
      throw InfeasibleRestriction(fmt::format(
          "after pruning, restriction row {} depends on other rows but asks for {} instead of {}",
          kept[static_cast<std::size_t>(k)] + 1, rk(k), implied));
  }
  out.R = Ri;
  out.r = ri;
  for (Index k : indep) out.rows.push_back(kept[static_cast<std::size_t>(k)]);
  return out;
}

Vector ridge_init(const Gram& g, double lambda_init) {
  check_gram(g);
  if (!(lambda_init > 0.0)) throw InvalidArgument("ridge_init: lambda_init must be > 0");
  Matrix A = g.xtx;
  A.diagonal().array() += lambda_init;
  return spd_solve(A, g.xty, "ridge");
}

Vector ridge_init(const Dataset& d, double lambda_init) {
  return ridge_init(Gram::from(d), lambda_init);
}

Vector ols(const Gram& g, const std::optional<IndexList>& support) {
  check_gram(g);
  const IndexList cols = support ? *support : all_columns(g.p());
  Vector beta = Vector::Zero(g.p());
  if (cols.empty()) return beta;
  for (Index j : cols)
    if (j < 0 || j >= g.p()) throw InvalidArgument(fmt::format("ols: column {} out of range", j));
  const Vector b = spd_solve(take(g.xtx, cols, cols), take(g.xty, cols), "least squares gram");
  for (std::size_t i = 0; i < cols.size(); ++i) beta(cols[i]) = b(static_cast<Index>(i));
  return beta;
}

Vector ols(const Dataset& d, const std::optional<IndexList>& support) {
  return ols(Gram::from(d), support);
}

double penalized_objective(const Gram& g, const PenaltySpec& pen, const Vector& beta) {
  double penalty = 0.0;
  for (Index j = 0; j < beta.size(); ++j) penalty += pen.value(beta(j));
  return g.rss(beta) + penalty;
}

Vector lqa_step(const Gram& g, const PenaltySpec& pen, const Restriction* rest, const Vector& beta,
                double eta) {
  check_gram(g);
  if (beta.size() != g.p()) throw InvalidArgument("lqa_step: beta has the wrong length");
  return update(g, pen, rest, beta, surviving(beta, all_columns(g.p()), eta), eta);
}

FitResult fit_lqa(const Gram& g, const PenaltySpec& pen, const Restriction* rest,
                  const SolverOptions& opts) {
  check_gram(g);
  opts.validate();
  if (rest && rest->p() != g.p())
    throw InvalidArgument(
        fmt::format("restriction has {} columns but data has {}", rest->p(), g.p()));

  Vector beta;
  if (const auto* r = std::get_if<RidgeInit>(&opts.init)) {
    beta = ridge_init(g, r->lambda);
  } else {
    beta = std::get<Vector>(opts.init);
    if (beta.size() != g.p())
      throw InvalidArgument(fmt::format("initial vector has length {}, expected {}", beta.size(),
                                        g.p()));
  }

  FitResult fit;
  fit.penalty = pen;
  IndexList active = all_columns(g.p());
  for (int t = 1; t <= opts.max_iter; ++t) {
    active = surviving(beta, active, opts.eta);
    Vector next = update(g, pen, rest, beta, active, opts.eta);
    const double delta = (next - beta).norm();
    beta = std::move(next);
    fit.iterations = t;
    fit.objective_trace.push_back(penalized_objective(g, pen, beta));
    if (delta < opts.eta) {
      fit.converged = true;
      break;
    }
  }
  // Coordinates that fell under eta on the final step leave the active set.
  active = surviving(beta, active, opts.eta);
  for (Index j = 0; j < g.p(); ++j)
    if (std::find(active.begin(), active.end(), j) == active.end()) beta(j) = 0.0;
  fit.beta = std::move(beta);
  fit.active = std::move(active);
  return fit;
}

FitResult fit_bridge(const Gram& g, const PenaltySpec& pen, const SolverOptions& opts) {
  if (!pen.is_bridge()) throw InvalidArgument("fit_bridge needs a bridge penalty");
  return fit_lqa(g, pen, nullptr, opts);
}

FitResult fit_bridge(const Dataset& d, const PenaltySpec& pen, const SolverOptions& opts) {
  return fit_bridge(Gram::from(d), pen, opts);
}

FitResult fit_rbridge(const Gram& g, const PenaltySpec& pen, const Restriction& rest,
                      const SolverOptions& opts) {
  if (!pen.is_bridge()) throw InvalidArgument("fit_rbridge needs a bridge penalty");
  return fit_lqa(g, pen, &rest, opts);
}

FitResult fit_rbridge(const Dataset& d, const PenaltySpec& pen, const Restriction& rest,
                      const SolverOptions& opts) {
  return fit_rbridge(Gram::from(d), pen, rest, opts);
}

double analytic_mse(const LqaSystem& sys, const Restriction& rest, const Vector& beta_true,
                    double sigma2) {
  if (!(sigma2 >= 0.0)) throw InvalidArgument("analytic_mse: sigma2 must be >= 0");
  const Matrix M = projector(sys, rest, beta_true);
  const double variance = sigma2 * (M * sys.gram * M).trace();
  const Vector bias = M * (sys.weights.asDiagonal() * beta_true);
  return variance + bias.squaredNorm();
}

double analytic_mse_bound(const LqaSystem& sys, const Restriction& rest, const Vector& beta_true,
                          double sigma2) {
  if (!(sigma2 >= 0.0)) throw InvalidArgument("analytic_mse_bound: sigma2 must be >= 0");
  const Matrix M = projector(sys, rest, beta_true);
  const Vector bias = M * (sys.weights.asDiagonal() * beta_true);
  return sigma2 * M.trace() + bias.squaredNorm();
}

}  // namespace rbridge
