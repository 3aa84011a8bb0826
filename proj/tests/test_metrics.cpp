#include <gtest/gtest.h>

#include "awwsvm/metrics.hpp"
#include "support.hpp"

using namespace awwsvm;
using awwsvm::test_support::dense_sample;

TEST(Report, HandComputedRatios) {
  const auto r = report({50, 10, 5, 35});
  EXPECT_DOUBLE_EQ(r.accuracy, 0.85);
  EXPECT_NEAR(r.precision, 50.0 / 55.0, 1e-15);
  EXPECT_NEAR(r.recall, 50.0 / 60.0, 1e-15);
  EXPECT_NEAR(r.specificity, 0.875, 1e-15);
  EXPECT_NEAR(r.f1, 0.8695652173913043, 1e-12);
  EXPECT_NEAR(r.gmean, 0.8539125638299666, 1e-12);
  EXPECT_DOUBLE_EQ(r.sensitivity, r.recall);
  EXPECT_DOUBLE_EQ(r.sensitivity_as_printed, r.precision);
}

TEST(Report, PerfectClassifier) {
  const auto r = report({7, 0, 0, 7});
  for (const double v : {r.accuracy, r.precision, r.recall, r.specificity, r.f1, r.gmean}) EXPECT_EQ(v, 1.0);
}

TEST(Report, ZeroDenominatorsAreFlagged) {
  const auto r = report({0, 10, 0, 5});
  EXPECT_EQ(r.precision, 0.0);
  EXPECT_TRUE(r.degenerate.precision);
  EXPECT_TRUE(r.degenerate.f1);
  EXPECT_FALSE(r.degenerate.recall);
  EXPECT_EQ(r.gmean, 0.0);

  const auto empty = report({0, 0, 0, 0});
  EXPECT_TRUE(empty.degenerate.accuracy);
  EXPECT_EQ(empty.accuracy, 0.0);
}

TEST(Confusion, ConstantPositivePredictor) {
  std::vector<Sample> s;
  for (int i = 0; i < 30; ++i) s.push_back(dense_sample({1.0}, 1));
  for (int i = 0; i < 70; ++i) s.push_back(dense_sample({-1.0}, -1));
  const auto ds = Dataset::from_samples(s);
  const LinearModel always(Eigen::Vector2d(0.0, 1.0));
  EXPECT_EQ(confusion(always, ds), (ConfusionMatrix{30, 0, 70, 0}));
}

TEST(Confusion, NegatedModelSwapsCells) {
  const auto ds = synth_two_gaussians(40, 60, 1.0, 0.1, 3);
  const LinearModel m(Eigen::Vector3d(1.0, 0.3, 0.2));
  const LinearModel neg(Eigen::Vector3d(-m.weights));
  const auto a = confusion(m, ds);
  const auto b = confusion(neg, ds);
  // Points exactly on the hyperplane would not swap; none exist here.
  EXPECT_EQ(a.tp, b.fn);
  EXPECT_EQ(a.fn, b.tp);
  EXPECT_EQ(a.fp, b.tn);
  EXPECT_EQ(a.tn, b.fp);
  EXPECT_EQ(a.total(), ds.size());
}

TEST(Confusion, PerfectSeparation) {
  const auto ds = synth_two_gaussians(20, 20, 40.0, 0.0, 3);
  const auto cm = confusion(LinearModel(Eigen::Vector3d(1.0, 0.0, 0.0)), ds);
  EXPECT_EQ(cm.fn, 0u);
  EXPECT_EQ(cm.fp, 0u);
}
