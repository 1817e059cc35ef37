#include "oracles.hpp"
#include "wlp/theory.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace wlp::theory;

TEST(DeltaHatLp, Examples) {
  EXPECT_NEAR(delta_hat_lp(3, 1), 0.5, 1e-15);
  EXPECT_NEAR(delta_hat_lp(3, 0.4), 80.0 / 82.0, 1e-12);
  EXPECT_NEAR(delta_hat_lp(3, 0.4), static_cast<double>(oracle::delta_hat(3, 0.4L, 1, 0.5L, 1)), 1e-12);
  double prev = delta_hat_lp(3, 1);
  for (double p = 0.9; p > 0.05; p -= 0.1) {
    const double v = delta_hat_lp(3, p);
    EXPECT_GT(v, prev);
    EXPECT_LT(v, 1.0);
    prev = v;
  }
  EXPECT_THROW(delta_hat_lp(1, 0.5), std::invalid_argument);
  EXPECT_THROW(delta_hat_lp(3, 0), std::invalid_argument);
}

TEST(DeltaHatWl1, Examples) {
  EXPECT_NEAR(delta_hat_wl1(3, 1, 0.2, 1), 0.5, 1e-15);
  EXPECT_NEAR(delta_hat_wl1(3, 0, 0.8, 1), 2.6 / 3.4, 1e-12);
  for (double w : {0.0, 0.3, 0.9}) EXPECT_NEAR(delta_hat_wl1(5, w, 0.5, 1), 4.0 / 6.0, 1e-12);
  EXPECT_THROW(delta_hat_wl1(3, 0, 1.0, 3), std::invalid_argument);
}

TEST(DeltaHatWlp, Examples) {
  EXPECT_NEAR(delta_hat_wlp(3, 0.5, 0, 0.8, 1), 26.936 / 27.064, 1e-3);
  EXPECT_NEAR(delta_hat_wlp(3, 0.5, 0, 0.8, 1), static_cast<double>(oracle::delta_hat(3, 0.5L, 0, 0.8L, 1)), 1e-12);
  for (double w : {0.0, 0.25, 0.7})
    EXPECT_NEAR(delta_hat_wlp(4, 0.3, w, 0.5, 1), delta_hat_lp(4, 0.3), 1e-12);
}

TEST(DeltaHatWlpProperty, MatchesOracleOnGrid) {
  for (double a : {1.5, 2.0, 3.0, 7.0})
    for (double p : {0.1, 0.4, 0.75, 1.0})
      for (double w : {0.0, 0.5, 0.9})
        for (double alpha : {0.0, 0.3, 0.6, 1.0})
          for (double rho : {0.5, 1.0}) {
            const double ref = static_cast<double>(oracle::delta_hat(a, p, w, alpha, rho));
            EXPECT_NEAR(delta_hat_wlp(a, p, w, alpha, rho), ref, 1e-12);
          }
}

TEST(DeltaHatWlpProperty, ReductionIdentities) {
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j)
      for (int l = 0; l < 10; ++l) {
        const double a = 1.2 + 0.5 * i;
        const double p = 0.1 + 0.09 * j;
        const double alpha = 0.1 * l;
        const double w = 0.1 * j;
        const double rho = 0.2 + 0.1 * i;
        EXPECT_NEAR(delta_hat_wlp(a, p, 1.0, alpha, rho), delta_hat_lp(a, p), 1e-12);
        EXPECT_NEAR(delta_hat_wlp(a, 1.0, w, alpha, rho), delta_hat_wl1(a, w, alpha, rho), 1e-12);
      }
}

TEST(DeltaHatWlpProperty, IncreasingInAlpha) {
  for (double a : {2.0, 3.0})
    for (double p : {0.3, 0.7, 1.0})
      for (double w : {0.0, 0.4, 0.9}) {
        double prev = -INFINITY;
        for (int l = 0; l <= 20; ++l) {
          const double v = delta_hat_wlp(a, p, w, 0.05 * l, 1.0);
          EXPECT_GT(v, prev);
          prev = v;
        }
      }
}

TEST(DeltaHatWlpProperty, DominatesWeightedL1WhenAlphaAboveHalf) {
  for (double a : {2.0, 3.0, 5.0})
    for (double p : {0.2, 0.5, 0.9})
      for (double w : {0.0, 0.3, 0.8})
        for (double alpha : {0.55, 0.7, 0.9, 1.0}) {
          if (w == 0.0 && alpha == 1.0) {
            // Exact zero-weight estimate: both thresholds reach 1.
            EXPECT_EQ(delta_hat_wlp(a, p, w, alpha, 1.0), 1.0);
            EXPECT_EQ(delta_hat_wl1(a, w, alpha, 1.0), 1.0);
            continue;
          }
          EXPECT_GT(delta_hat_wlp(a, p, w, alpha, 1.0), delta_hat_wl1(a, w, alpha, 1.0));
        }
}

TEST(SupportFactor, EqualsOneOnlyWithoutUsefulInformation) {
  EXPECT_NEAR(support_factor(0.5, 0.3, 0.5, 1.0), 1.0, 1e-15);
  EXPECT_NEAR(support_factor(0.5, 1.0, 0.9, 1.0), 1.0, 1e-15);
  EXPECT_LT(support_factor(0.5, 0.3, 0.6, 1.0), 1.0);
  EXPECT_GT(support_factor(0.5, 0.3, 0.4, 1.0), 1.0);
}

TEST(TheoryParams, ValidateRejectsBadInputs) {
  TheoryParams ok{0.5, 0.3, 0.7, 1.0, 3.0, 2, 0.1, 0.1};
  EXPECT_NO_THROW(ok.validate());
  auto bad = ok;
  bad.alpha = 1.2;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.a = 1.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.a = 2.25;
  EXPECT_THROW(bad.validate(), std::invalid_argument);  // a k = 4.5
  bad.k = 4;
  EXPECT_NO_THROW(bad.validate());
  bad = ok;
  bad.delta_ak = 1.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.omega = -0.1;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(SufficientCondition, ZeroDeltasAndBoundaryProbe) {
  TheoryParams t{0.5, 0.3, 0.7, 1.0, 3.0, 1, 0.0, 0.0};
  EXPECT_TRUE(sufficient_condition_holds(t));
  const double edge = delta_hat_wlp(3.0, 0.5, 0.3, 0.7, 1.0);
  t.delta_ak = t.delta_a1k = edge - 1e-9;
  EXPECT_TRUE(sufficient_condition_holds(t));
  t.delta_ak = t.delta_a1k = edge + 1e-9;
  EXPECT_FALSE(sufficient_condition_holds(t));
  t.delta_ak.reset();
  EXPECT_THROW(sufficient_condition_holds(t), std::invalid_argument);
}

TEST(SufficientCondition, POneReproducesWeightedL1Threshold) {
  for (double w : {0.0, 0.5, 1.0})
    for (double alpha : {0.2, 0.5, 0.8}) {
      const double edge = delta_hat_wl1(3.0, w, alpha, 1.0);
      TheoryParams t{1.0, w, alpha, 1.0, 3.0, 1, edge - 1e-9, edge - 1e-9};
      EXPECT_TRUE(sufficient_condition_holds(t));
      t.delta_ak = t.delta_a1k = edge + 1e-9;
      EXPECT_FALSE(sufficient_condition_holds(t));
    }
}

TEST(ErrorConstants, POneEqualsWeightedL1Constants) {
  for (double w : {0.0, 0.3, 0.7, 1.0})
    for (double alpha : {0.2, 0.5, 0.9})
      for (double d : {0.0, 0.05, 0.1}) {
        const TheoryParams t{1.0, w, alpha, 1.0, 3.0, 1, d, d + 0.02};
        const auto c = error_constants(t);
        const auto r = wl1_error_constants(3.0, w, alpha, 1.0, d, d + 0.02);
        EXPECT_NEAR(c.c1, r.c1, 1e-12 * r.c1);
        EXPECT_NEAR(c.c2, r.c2, 1e-12 * r.c2);
      }
}

TEST(ErrorConstants, HalfAccuracyEqualsPlainLpConstants) {
  for (double p : {0.3, 0.5, 0.8})
    for (double w : {0.0, 0.3, 0.9}) {
      const TheoryParams t{p, w, 0.5, 1.0, 3.0, 1, 0.05, 0.08};
      const auto c = error_constants(t);
      const auto r = lp_error_constants(3.0, p, 0.05, 0.08);
      EXPECT_NEAR(c.c1, r.c1, 1e-12 * r.c1);
      EXPECT_NEAR(c.c2, r.c2, 1e-12 * r.c2);
    }
}

TEST(ErrorConstants, StrictlySmallerExactlyWhenAlphaAboveHalf) {
  std::vector<std::pair<double, double>> grid;
  for (double d1 = 0.0; d1 < 0.3; d1 += 0.05)
    for (double d2 = 0.0; d2 < 0.3; d2 += 0.05) grid.emplace_back(d1, d2);
  EXPECT_TRUE(proposition2_check(0.5, 0.3, 0.6, 1.0, 3.0, grid));
  EXPECT_TRUE(proposition2_check(0.5, 0.3, 0.4, 1.0, 3.0, grid));
  const auto lo = error_constants({0.5, 0.3, 0.4, 1.0, 3.0, 1, 0.05, 0.05});
  const auto hi = error_constants({0.5, 0.3, 0.6, 1.0, 3.0, 1, 0.05, 0.05});
  const auto lp = lp_error_constants(3.0, 0.5, 0.05, 0.05);
  EXPECT_LT(hi.c1, lp.c1);
  EXPECT_LT(hi.c2, lp.c2);
  EXPECT_GT(lo.c1, lp.c1);
  EXPECT_GT(lo.c2, lp.c2);
}

TEST(ErrorConstants, DecreaseWithAlphaAtZeroOmega) {
  const auto low = error_constants({0.4, 0.0, 0.3, 1.0, 3.0, 1, 0.1, 0.1});
  const auto high = error_constants({0.4, 0.0, 0.7, 1.0, 3.0, 1, 0.1, 0.1});
  EXPECT_LT(high.c1, low.c1);
  EXPECT_LT(high.c2, low.c2);
}

TEST(ErrorConstantsProperty, FiniteAndPositiveInsideFeasibleRegion) {
  for (double p : {0.2, 0.5, 1.0})
    for (double w : {0.0, 0.5, 1.0})
      for (double alpha : {0.0, 0.5, 1.0})
        for (double d : {0.0, 0.1, 0.2}) {
          const TheoryParams t{p, w, alpha, 1.0, 3.0, 1, d, d};
          if (!sufficient_condition_holds(t)) continue;
          const auto c = error_constants(t);
          EXPECT_TRUE(std::isfinite(c.c1) && c.c1 > 0);
          EXPECT_TRUE(std::isfinite(c.c2) && c.c2 > 0);
        }
}

TEST(ErrorConstants, ViolatedConditionThrows) {
  EXPECT_THROW(error_constants({1.0, 1.0, 0.5, 1.0, 3.0, 1, 0.9, 0.9}), ConditionViolatedError);
  EXPECT_THROW(error_constants({1.0, 1.0, 0.5, 1.0, 3.0, 1, std::nullopt, 0.1}), std::invalid_argument);
}
