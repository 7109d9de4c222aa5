#include <rbridge/errors.hpp>
#include <rbridge/simulation.hpp>

#include <gtest/gtest.h>

using namespace rbridge;

TEST(Ar1, CovarianceEntries) {
  const Matrix S = ar1_covariance(5, 0.5);
  EXPECT_EQ(S(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(S(0, 2), 0.25);
  EXPECT_DOUBLE_EQ(S(4, 1), 0.125);
  EXPECT_TRUE(ar1_covariance(4, 0.0).isIdentity(0.0));
}

TEST(Ar1, DesignReproducesCorrelation) {
  const Index n = 100000;
  for (double rho : {0.0, 0.9}) {
    const Matrix X = gen_ar1_design(n, 3, rho, 17);
    const Matrix centered = X.rowwise() - X.colwise().mean();
    const Matrix cov = centered.transpose() * centered / static_cast<double>(n - 1);
    const Vector sd = cov.diagonal().cwiseSqrt();
    const Matrix corr = sd.cwiseInverse().asDiagonal() * cov * sd.cwiseInverse().asDiagonal();
    EXPECT_LT((corr - ar1_covariance(3, rho)).cwiseAbs().maxCoeff(), 0.01) << "rho=" << rho;
  }
}

TEST(Ar1, DesignIsSeeded) {
  EXPECT_EQ(gen_ar1_design(10, 4, 0.5, 3), gen_ar1_design(10, 4, 0.5, 3));
  EXPECT_NE(gen_ar1_design(10, 4, 0.5, 3), gen_ar1_design(10, 4, 0.5, 4));
  EXPECT_THROW(gen_ar1_design(10, 4, 1.0, 3), InvalidArgument);
  EXPECT_THROW(gen_ar1_design(10, 4, -1.5, 3), InvalidArgument);
}

TEST(Response, NoiselessIsExact) {
  const Matrix X = gen_ar1_design(20, 3, 0.5, 1);
  const Vector beta = Vector::LinSpaced(3, 1.0, 3.0);
  EXPECT_EQ(gen_response(X, beta, 0.0, 2), (X * beta).eval());
}

TEST(Response, StandardNormalNoise) {
  const Index n = 100000;
  const Vector y = gen_response(Matrix::Zero(n, 1), Vector::Zero(1), 1.0, 5);
  const double mean = y.mean();
  const double var = (y.array() - mean).square().sum() / static_cast<double>(n - 1);
  EXPECT_NEAR(mean, 0.0, 0.02);
  EXPECT_NEAR(var, 1.0, 0.02);
  EXPECT_EQ(y, gen_response(Matrix::Zero(n, 1), Vector::Zero(1), 1.0, 5));
}

TEST(Example1, CaseRestrictions) {
  Vector beta(8);
  beta << 3, 1.5, 0, 0, 2, 0, 0, 0;

  const Scenario c1 = example1_scenario(1, 40, 1.0, 0.5);
  EXPECT_EQ(c1.beta_true, beta);
  Matrix row1(1, 8);
  row1 << 1, 1, 0, 0, 1, 0, 0, 0;
  EXPECT_EQ(c1.restriction.R(), row1);
  EXPECT_EQ(c1.restriction.r()(0), 6.5);

  const Scenario c2 = example1_scenario(2, 40, 1.0, 0.5);
  Matrix row2(1, 8);
  row2 << -1, 1, 0, 0, 1, 0, 0, 0;
  EXPECT_EQ(c2.restriction.R(), row2);
  EXPECT_EQ(c2.restriction.r()(0), 0.5);

  const Scenario c3 = example1_scenario(3, 60, 3.0, 0.9);
  ASSERT_EQ(c3.restriction.m(), 2);
  EXPECT_EQ(c3.restriction.R().row(0), row1.row(0));
  EXPECT_EQ(c3.restriction.R().row(1), row2.row(0));
  EXPECT_EQ(c3.n, 60);
  EXPECT_EQ(c3.sigma, 3.0);
  EXPECT_EQ(c3.rho, 0.9);

  const Scenario c4 = example1_scenario(4, 40, 1.0, 0.5);
  EXPECT_EQ(c4.restriction.R(), restriction_zeros({3, 4, 6, 7, 8}, 8).R());
  EXPECT_TRUE(c4.restriction.r().isZero(0.0));

  for (int c = 1; c <= 4; ++c)
    EXPECT_EQ(example1_scenario(c, 40, 1, 0.5).restriction.residual_inf(beta), 0.0) << c;
  EXPECT_EQ(c1.true_support(), (IndexList{0, 1, 4}));
  EXPECT_THROW(example1_scenario(5, 40, 1.0, 0.5), InvalidArgument);
}

TEST(Example2, CaseRestrictions) {
  const Scenario c1 = example2_scenario(1, 100, 1.0, 0.5);
  EXPECT_EQ(c1.n, 50);
  EXPECT_EQ(c1.beta_true.size(), 100);
  EXPECT_EQ(c1.beta_true(10), 2.0);
  EXPECT_EQ(c1.beta_true(19), 2.0);
  EXPECT_EQ(c1.beta_true(30), -2.0);
  EXPECT_EQ(c1.beta_true(40), 0.0);
  EXPECT_EQ(c1.true_support().size(), 20u);
  EXPECT_EQ(c1.restriction.m(), 80);
  EXPECT_TRUE(c1.restriction.r().isZero(0.0));
  EXPECT_EQ(c1.restriction.residual_inf(c1.beta_true), 0.0);

  const Scenario c2 = example2_scenario(2, 100, 1.0, 0.5);
  EXPECT_EQ(c2.restriction.m(), 80);
  EXPECT_TRUE((c2.restriction.r().array() == 0.1).all());

  const Scenario c3 = example2_scenario(3, 200, 1.0, 0.5);
  ASSERT_EQ(c3.restriction.m(), 20);
  Vector r3(20);
  r3 << Vector::Constant(10, 2.0), Vector::Constant(10, -2.0);
  EXPECT_EQ(c3.restriction.r(), r3);
  EXPECT_EQ(c3.restriction.residual_inf(c3.beta_true), 0.0);

  const Scenario c4 = example2_scenario(4, 100, 1.0, 0.5);
  EXPECT_DOUBLE_EQ(c4.restriction.r()(0), 2.1);
  EXPECT_DOUBLE_EQ(c4.restriction.r()(19), -2.1);
  EXPECT_THROW(example2_scenario(0, 100, 1.0, 0.5), InvalidArgument);
}

TEST(Scenario, CovarianceMatchesRho) {
  const Scenario s = example1_scenario(1, 40, 1.0, 0.9);
  EXPECT_DOUBLE_EQ(s.covariance()(0, 2), 0.81);
  EXPECT_NE(s.label.find("case1"), std::string::npos);
}
