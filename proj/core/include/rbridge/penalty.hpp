#pragma once

#include <string>
#include <variant>

namespace rbridge {

struct BridgeFamily {
  double q = 1.0;
};

/// lambda * [alpha |b| + (1 - alpha) b^2]; alpha = 1 is the LASSO.
struct ElasticNetFamily {
  double alpha = 1.0;
};

struct ScadFamily {
  double a = 3.7;
};

using PenaltyFamily = std::variant<BridgeFamily, ElasticNetFamily, ScadFamily>;

/// A penalty family together with its tuning parameter lambda.
class PenaltySpec {
 public:
  static PenaltySpec bridge(double lambda, double q);
  static PenaltySpec elastic_net(double lambda, double alpha);
  static PenaltySpec scad(double lambda, double a = 3.7);

  double lambda() const noexcept { return lambda_; }
  const PenaltyFamily& family() const noexcept { return family_; }

  bool is_bridge() const noexcept { return std::holds_alternative<BridgeFamily>(family_); }
  /// Bridge exponent; throws when the family is not bridge.
  double q() const;

  /// Penalty value at a single coordinate magnitude, including lambda.
  double value(double abs_beta) const;

  std::string family_name() const;

 private:
  PenaltySpec(double lambda, PenaltyFamily family);

  double lambda_ = 0.0;
  PenaltyFamily family_;
};

}  // namespace rbridge
