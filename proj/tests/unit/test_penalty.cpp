#include <rbridge/errors.hpp>
#include <rbridge/penalty.hpp>
#include <rbridge/solver.hpp>

#include <gtest/gtest.h>

using namespace rbridge;

TEST(PenaltySpec, Validation) {
  EXPECT_THROW(PenaltySpec::bridge(-1.0, 1.0), InvalidArgument);
  EXPECT_THROW(PenaltySpec::bridge(1.0, 0.0), InvalidArgument);
  EXPECT_THROW(PenaltySpec::elastic_net(1.0, 1.5), InvalidArgument);
  EXPECT_THROW(PenaltySpec::scad(1.0, 2.0), InvalidArgument);
  EXPECT_NO_THROW(PenaltySpec::bridge(0.0, 0.25));
}

TEST(PenaltySpec, Values) {
  EXPECT_DOUBLE_EQ(PenaltySpec::bridge(2.0, 1.0).value(-3.0), 6.0);
  EXPECT_DOUBLE_EQ(PenaltySpec::bridge(2.0, 0.5).value(4.0), 4.0);
  EXPECT_DOUBLE_EQ(PenaltySpec::bridge(2.0, 0.5).value(0.0), 0.0);
  EXPECT_DOUBLE_EQ(PenaltySpec::elastic_net(2.0, 0.5).value(2.0), 2.0 * (1.0 + 2.0));
  EXPECT_DOUBLE_EQ(PenaltySpec::scad(1.0, 3.7).value(10.0), 0.5 * 4.7);
}

TEST(PenaltySpec, FamilyQueries) {
  EXPECT_TRUE(PenaltySpec::bridge(1.0, 1.5).is_bridge());
  EXPECT_EQ(PenaltySpec::bridge(1.0, 1.5).q(), 1.5);
  EXPECT_THROW(PenaltySpec::scad(1.0).q(), InvalidArgument);
  EXPECT_EQ(PenaltySpec::elastic_net(1.0, 0.3).family_name(), "elastic_net");
}

TEST(PenaltyWeights, WorkedValues) {
  Vector b(2);
  b << 1, 1;
  EXPECT_TRUE(penalty_weights(b, 2.0, 2.0).isApprox(Vector::Constant(2, 2.0)));
  EXPECT_NEAR(penalty_weights(Vector::Constant(1, 0.5), 1.0, 1.0)(0), 1.0, 1e-15);
  EXPECT_NEAR(penalty_weights(Vector::Constant(1, 4.0), 8.0, 0.5)(0), 0.25, 1e-15);
}

TEST(PenaltyWeights, QuadraticIgnoresLocalPoint) {
  Vector b(3);
  b << 1e-9, -3.0, 100.0;
  EXPECT_TRUE(penalty_weights(b, 1.5, 2.0).isApprox(Vector::Constant(3, 1.5)));
}

TEST(PenaltyWeights, BelowEtaIsPreconditionViolation) {
  EXPECT_THROW(penalty_weights(Vector::Constant(1, 1e-8), 1.0, 1.0), InvalidArgument);
  EXPECT_THROW(penalty_weights(Vector::Constant(1, 0.0), 1.0, 0.5), InvalidArgument);
}

TEST(PenaltyWeights, BoundedByEtaPower) {
  const double eta = 1e-7;
  const Vector w = penalty_weights(Vector::Constant(1, eta), 1.0, 1.0, eta);
  EXPECT_NEAR(w(0), 0.5 / eta, 1e-3);
  EXPECT_TRUE(w.allFinite());
}
