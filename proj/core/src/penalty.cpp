#include <rbridge/baselines.hpp>
#include <rbridge/errors.hpp>
#include <rbridge/penalty.hpp>

#include <fmt/format.h>

#include <cmath>

namespace rbridge {

PenaltySpec::PenaltySpec(double lambda, PenaltyFamily family)
    : lambda_(lambda), family_(std::move(family)) {
  if (!(lambda_ >= 0.0) || !std::isfinite(lambda_))
    throw InvalidArgument(fmt::format("lambda must be finite and >= 0, got {}", lambda_));
}

PenaltySpec PenaltySpec::bridge(double lambda, double q) {
  if (!(q > 0.0) || !std::isfinite(q))
    throw InvalidArgument(fmt::format("bridge exponent q must be > 0, got {}", q));
  return PenaltySpec(lambda, BridgeFamily{q});
}

PenaltySpec PenaltySpec::elastic_net(double lambda, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw InvalidArgument(fmt::format("elastic-net alpha must lie in [0, 1], got {}", alpha));
  return PenaltySpec(lambda, ElasticNetFamily{alpha});
}

PenaltySpec PenaltySpec::scad(double lambda, double a) {
  if (!(a > 2.0) || !std::isfinite(a))
    throw InvalidArgument(fmt::format("SCAD parameter a must be > 2, got {}", a));
  return PenaltySpec(lambda, ScadFamily{a});
}

double PenaltySpec::q() const {
  if (const auto* b = std::get_if<BridgeFamily>(&family_)) return b->q;
  throw InvalidArgument("penalty is not a bridge penalty");
}

double PenaltySpec::value(double t) const {
  t = std::abs(t);
  return std::visit(
      [&](const auto& f) -> double {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, BridgeFamily>) {
          return t == 0.0 ? 0.0 : lambda_ * std::pow(t, f.q);
        } else if constexpr (std::is_same_v<F, ElasticNetFamily>) {
          return lambda_ * (f.alpha * t + (1.0 - f.alpha) * t * t);
        } else {
          return scad_penalty(t, lambda_, f.a);
        }
      },
      family_);
}

std::string PenaltySpec::family_name() const {
  return std::visit(
      [](const auto& f) -> std::string {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, BridgeFamily>) return "bridge";
        else if constexpr (std::is_same_v<F, ElasticNetFamily>) return "elastic_net";
        else return "scad";
      },
      family_);
}

}  // namespace rbridge
