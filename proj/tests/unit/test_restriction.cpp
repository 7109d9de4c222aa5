#include <rbridge/errors.hpp>
#include <rbridge/restriction.hpp>

#include <gtest/gtest.h>

using namespace rbridge;

TEST(Restriction, ZerosBuildsSelectorRows) {
  const Restriction r = restriction_zeros({3, 4, 6, 7, 8}, 8);
  EXPECT_EQ(r.m(), 5);
  EXPECT_EQ(r.p(), 8);
  EXPECT_EQ(r.R()(0, 2), 1.0);
  EXPECT_EQ(r.R()(4, 7), 1.0);
  EXPECT_EQ(r.R().sum(), 5.0);
  EXPECT_TRUE(r.r().isZero(0.0));
}

TEST(Restriction, ZerosValidatesRange) {
  EXPECT_THROW(restriction_zeros({0}, 4), InvalidArgument);
  EXPECT_THROW(restriction_zeros({5}, 4), InvalidArgument);
  EXPECT_THROW(restriction_zeros({1, 2, 3, 4}, 4), InvalidArgument);
  EXPECT_THROW(restriction_zeros({}, 4), InvalidArgument);
}

TEST(Restriction, AffineStacksRows) {
  Vector w1(3), w2(3);
  w1 << 1, 1, 0;
  w2 << 0, 1, -1;
  const Restriction r = restriction_affine({{w1, 2.0}, {w2, 0.5}});
  EXPECT_EQ(r.m(), 2);
  EXPECT_EQ(r.r()(1), 0.5);
  EXPECT_EQ(r.R()(1, 2), -1.0);
}

TEST(Restriction, AffineRejectsRaggedRows) {
  EXPECT_THROW(restriction_affine({{Vector::Ones(3), 1.0}, {Vector::Ones(2), 1.0}}),
               InvalidArgument);
}

TEST(Restriction, RankDeficientNamesDependentRow) {
  Matrix R(3, 4);
  R << 1, 0, 0, 0,  //
      0, 1, 0, 0,   //
      2, 3, 0, 0;
  try {
    Restriction(R, Vector::Zero(3));
    FAIL() << "expected an error";
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos) << e.what();
  }
}

TEST(Restriction, NeedsFewerRowsThanColumns) {
  EXPECT_THROW(Restriction(Matrix::Identity(3, 3), Vector::Zero(3)), InvalidArgument);
  EXPECT_THROW(Restriction(Matrix(0, 3), Vector(0)), InvalidArgument);
  EXPECT_THROW(Restriction(Matrix::Ones(1, 3), Vector::Zero(2)), InvalidArgument);
}

TEST(Restriction, DependentRowsScansTopDown) {
  Matrix R(4, 3);
  R << 1, 0, 0,  //
      1, 0, 0,   //
      0, 1, 0,   //
      1, 1, 0;
  EXPECT_EQ(dependent_rows(R), (IndexList{1, 3}));
  EXPECT_TRUE(dependent_rows(Matrix::Identity(2, 3)).empty());
}

TEST(Restriction, ResidualInf) {
  Vector w(3);
  w << 1, 1, 1;
  const Restriction r = restriction_affine({{w, 3.0}});
  Vector b(3);
  b << 1, 1, 2;
  EXPECT_DOUBLE_EQ(r.residual_inf(b), 1.0);
  EXPECT_THROW(r.residual_inf(Vector::Ones(2)), InvalidArgument);
}

TEST(Restriction, TransformToStandardizedScale) {
  Vector w(2);
  w << 1, 2;
  const Restriction raw = restriction_affine({{w, 4.0}});
  StandardizationRecord rec;
  rec.x_means = Vector::Zero(2);
  rec.x_scales = Vector(2);
  rec.x_scales << 2.0, 4.0;
  const Restriction std_scale = transform_restriction(raw, rec);
  // A raw-scale solution b maps to b * scale on the standardized scale.
  Vector b_raw(2);
  b_raw << 2.0, 1.0;
  const Vector b_std = b_raw.cwiseProduct(rec.x_scales);
  EXPECT_NEAR(raw.residual_inf(b_raw), 0.0, 1e-15);
  EXPECT_NEAR(std_scale.residual_inf(b_std), 0.0, 1e-15);
  const Restriction back = transform_restriction(std_scale, rec.inverse());
  EXPECT_TRUE(back.R().isApprox(raw.R()));
}
