#include <rbridge/errors.hpp>
#include <rbridge/metrics.hpp>
#include <rbridge/simulation.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace rbridge;

namespace {

Vector ex1_beta() {
  Vector b(8);
  b << 3, 1.5, 0, 0, 2, 0, 0, 0;
  return b;
}

const IndexList kSupport{0, 1, 4};

}  // namespace

TEST(ModelError, WorkedValues) {
  const Vector b = ex1_beta();
  EXPECT_EQ(model_error(b, b, ar1_covariance(8, 0.5)), 0.0);
  Vector e1 = b;
  e1(0) += 1.0;
  EXPECT_DOUBLE_EQ(model_error(e1, b, Matrix::Identity(8, 8)), 1.0);
  Vector e12 = e1;
  e12(1) += 1.0;
  EXPECT_DOUBLE_EQ(model_error(e12, b, ar1_covariance(8, 0.5)), 3.0);
  EXPECT_THROW(model_error(Vector::Zero(3), b, Matrix::Identity(8, 8)), InvalidArgument);
}

TEST(ModelError, InvariantUnderJointPermutation) {
  std::mt19937_64 rng(3);
  const Matrix S = ar1_covariance(6, 0.7);
  Vector a = Vector::LinSpaced(6, -1.0, 2.0);
  Vector b = Vector::LinSpaced(6, 0.5, 0.0);
  std::vector<int> perm(6);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Eigen::PermutationMatrix<Eigen::Dynamic> P(6);
  for (int i = 0; i < 6; ++i) P.indices()(i) = perm[static_cast<std::size_t>(i)];
  const Matrix PS = P * S * P.transpose();
  EXPECT_NEAR(model_error(P * a, P * b, PS), model_error(a, b, S), 1e-12);
}

TEST(SelectionMetrics, ExactSupport) {
  const SelectionOutcome o = selection_metrics(ex1_beta(), kSupport);
  EXPECT_EQ(o.correct_zeros, 5);
  EXPECT_EQ(o.incorrect_zeros, 0);
  EXPECT_EQ(o.fit, FitClass::correct);
}

TEST(SelectionMetrics, AllZeroIsUnderfit) {
  const SelectionOutcome o = selection_metrics(Vector::Zero(8), kSupport);
  EXPECT_EQ(o.correct_zeros, 5);
  EXPECT_EQ(o.incorrect_zeros, 3);
  EXPECT_EQ(o.fit, FitClass::under);
}

TEST(SelectionMetrics, DenseIsOverfit) {
  const SelectionOutcome o = selection_metrics(Vector::Ones(8), kSupport);
  EXPECT_EQ(o.correct_zeros, 0);
  EXPECT_EQ(o.incorrect_zeros, 0);
  EXPECT_EQ(o.fit, FitClass::over);
}

TEST(SelectionMetrics, MissingOneAndAddingOneIsUnderfit) {
  Vector b = ex1_beta();
  b(1) = 0.0;
  b(2) = 0.1;
  const SelectionOutcome o = selection_metrics(b, kSupport);
  EXPECT_EQ(o.incorrect_zeros, 1);
  EXPECT_EQ(o.correct_zeros, 4);
  EXPECT_EQ(o.fit, FitClass::under);
}

TEST(SelectionMetrics, CountsStayInRange) {
  std::mt19937_64 rng(5);
  std::bernoulli_distribution zero(0.5);
  for (int t = 0; t < 200; ++t) {
    Vector b(8);
    for (Index j = 0; j < 8; ++j) b(j) = zero(rng) ? 0.0 : 1.0;
    const SelectionOutcome o = selection_metrics(b, kSupport);
    EXPECT_GE(o.correct_zeros, 0);
    EXPECT_LE(o.correct_zeros, 5);
    EXPECT_GE(o.incorrect_zeros, 0);
    EXPECT_LE(o.incorrect_zeros, 3);
  }
}

TEST(SelectionMetrics, ClassNames) {
  EXPECT_EQ(to_string(FitClass::under), "U");
  EXPECT_EQ(to_string(FitClass::correct), "C");
  EXPECT_EQ(to_string(FitClass::over), "O");
}

TEST(Summarize, ProportionsPartitionExactly) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> cls(0, 2);
  for (int reps : {1, 3, 7, 10, 33, 500}) {
    std::vector<SelectionOutcome> outcomes;
    std::vector<double> me;
    for (int r = 0; r < reps; ++r) {
      SelectionOutcome o;
      o.fit = static_cast<FitClass>(cls(rng));
      outcomes.push_back(o);
      me.push_back(r);
    }
    const MetricsSummary s = summarize("arm", me, outcomes, 0);
    EXPECT_EQ((s.u_fit + s.c_fit) + s.o_fit, 1.0) << reps;
    EXPECT_EQ(s.nreps, reps);
  }
}

TEST(Summarize, MeansAndMedian) {
  std::vector<SelectionOutcome> outcomes(4);
  outcomes[0] = {5, 0, FitClass::correct};
  outcomes[1] = {4, 0, FitClass::over};
  outcomes[2] = {5, 1, FitClass::under};
  outcomes[3] = {5, 0, FitClass::correct};
  const MetricsSummary s = summarize("x", {0.4, 0.1, 0.3, 0.2}, outcomes, 2);
  EXPECT_DOUBLE_EQ(s.mme, 0.25);
  EXPECT_DOUBLE_EQ(s.c, 4.75);
  EXPECT_DOUBLE_EQ(s.ic, 0.25);
  EXPECT_DOUBLE_EQ(s.c_fit, 0.5);
  EXPECT_DOUBLE_EQ(s.u_fit, 0.25);
  EXPECT_EQ(s.failures, 2);
}

TEST(Summarize, EmptyIsNan) {
  const MetricsSummary s = summarize("none", {}, {}, 3);
  EXPECT_TRUE(std::isnan(s.mme));
  EXPECT_EQ(s.nreps, 0);
  EXPECT_EQ(s.failures, 3);
}

TEST(Median, OddEvenEmpty) {
  EXPECT_EQ(median({3.0, 1.0, 2.0}), 2.0);
  EXPECT_EQ(median({4.0, 1.0, 2.0, 3.0}), 2.5);
  EXPECT_TRUE(std::isnan(median({})));
}
