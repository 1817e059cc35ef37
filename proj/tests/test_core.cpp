#include "oracles.hpp"
#include "wlp/core.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace wlp;

namespace {

Vector random_vector(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = g(rng);
  return v;
}

Vector random_weights(Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vector w(n);
  for (Index i = 0; i < n; ++i) w[i] = u(rng) < 0.3 ? u(rng) : 1.0;
  return w;
}

}  // namespace

TEST(SupportEstimate, SortsAndRejectsBadIndices) {
  SupportEstimate s({4, 1, 2}, 5);
  EXPECT_EQ(s.indices(), (std::vector<Index>{1, 2, 4}));
  EXPECT_TRUE(s.contains(4));
  EXPECT_FALSE(s.contains(0));
  EXPECT_EQ(s.one_based(), (std::vector<Index>{2, 3, 5}));
  EXPECT_THROW(SupportEstimate({1, 1}, 5), std::invalid_argument);
  EXPECT_THROW(SupportEstimate({5}, 5), std::invalid_argument);
  EXPECT_THROW(SupportEstimate({-1}, 5), std::invalid_argument);
}

TEST(SupportEstimate, OneBasedRoundTripAndOverlap) {
  const auto s = SupportEstimate::from_one_based({1, 5}, 5);
  EXPECT_EQ(s.indices(), (std::vector<Index>{0, 4}));
  EXPECT_THROW(SupportEstimate::from_one_based({0}, 5), std::invalid_argument);
  EXPECT_THROW(SupportEstimate::from_one_based({6}, 5), std::invalid_argument);
  EXPECT_EQ(s.overlap(SupportEstimate({0, 1, 2}, 5)), 1u);
}

TEST(WeightVector, OmegaOnEstimateOneElsewhere) {
  const WeightVector w(0.25, SupportEstimate({1, 3}, 4));
  EXPECT_EQ(w.values(), (Vector(4) << 1, 0.25, 1, 0.25).finished());
  EXPECT_EQ(WeightVector::uniform(3).values(), Vector::Ones(3));
  EXPECT_THROW(WeightVector(1.5, SupportEstimate({}, 3)), std::invalid_argument);
  EXPECT_THROW(WeightVector(-0.1, SupportEstimate({}, 3)), std::invalid_argument);
}

TEST(WeightedLpNorm, Examples) {
  EXPECT_EQ(weighted_lp_norm(Vector::Zero(3), WeightVector::uniform(3), 0.5), 0.0);
  EXPECT_DOUBLE_EQ(weighted_lp_norm((Vector(2) << 3, 4).finished(), WeightVector::uniform(2), 1.0), 7.0);
  const Vector x = Vector::Ones(2);
  const WeightVector w(0.5, SupportEstimate({0}, 2));
  const double expected = std::pow(static_cast<double>(oracle::weighted_lp_pow(x, w.values(), 0.5L)), 2.0);
  EXPECT_NEAR(weighted_lp_norm(x, w, 0.5), expected, 1e-12);
  EXPECT_NEAR(expected, 2.9142135623730949, 1e-12);
  EXPECT_THROW(weighted_lp_norm(x, w, 0.0), std::invalid_argument);
  EXPECT_THROW(weighted_lp_norm(x, w, 1.5), std::invalid_argument);
}

TEST(WeightedLpNorm, MatchesOracleOnRandomInputs) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pu(0.05, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Vector x = random_vector(17, rng);
    const Vector w = random_weights(17, rng);
    const double p = pu(rng);
    const double ref = std::pow(static_cast<double>(oracle::weighted_lp_pow(x, w, p)), 1.0 / p);
    EXPECT_NEAR(weighted_lp_norm(x, w, p), ref, 1e-10 * ref);
  }
}

TEST(WeightedLpNormProperty, UnitWeightsAtPOneIsL1) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector x = random_vector(23, rng);
    EXPECT_NEAR(weighted_lp_norm(x, WeightVector::uniform(23), 1.0), x.lpNorm<1>(), 1e-12 * x.lpNorm<1>());
  }
}

TEST(WeightedLpNormProperty, AbsolutelyHomogeneous) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> pu(0.1, 1.0), cu(-5.0, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector x = random_vector(12, rng);
    const Vector w = random_weights(12, rng);
    const double p = pu(rng), c = cu(rng);
    const double lhs = weighted_lp_norm(c * x, w, p);
    const double rhs = std::abs(c) * weighted_lp_norm(x, w, p);
    EXPECT_NEAR(lhs, rhs, 1e-11 * std::max(1.0, rhs));
  }
}

TEST(WeightedLpNormProperty, PTriangleInequality) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pu(0.05, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const Vector x = random_vector(9, rng), y = random_vector(9, rng);
    const Vector w = random_weights(9, rng);
    const double p = pu(rng);
    const double lhs = std::pow(weighted_lp_norm(x + y, w, p), p);
    const double rhs = std::pow(weighted_lp_norm(x, w, p), p) + std::pow(weighted_lp_norm(y, w, p), p);
    EXPECT_LE(lhs, rhs * (1 + 1e-12));
  }
}

TEST(BestKTerm, Examples) {
  const auto a = best_k_term((Vector(4) << 5, 0, 0, 2).finished(), 1);
  EXPECT_EQ(a.approximation, (Vector(4) << 5, 0, 0, 0).finished());
  EXPECT_EQ(a.support.one_based(), (std::vector<Index>{1}));

  const auto b = best_k_term((Vector(3) << 1, 1, 2).finished(), 2);
  EXPECT_EQ(b.approximation, (Vector(3) << 1, 0, 2).finished());
  EXPECT_EQ(b.support.one_based(), (std::vector<Index>{1, 3}));

  const Vector x = (Vector(3) << -1, 4, 0.5).finished();
  const auto c = best_k_term(x, 3);
  EXPECT_EQ(c.approximation, x);
  EXPECT_EQ(c.support.one_based(), (std::vector<Index>{1, 2, 3}));
  EXPECT_THROW(best_k_term(x, 0), std::invalid_argument);
  EXPECT_THROW(best_k_term(x, 4), std::invalid_argument);
}

TEST(BestKTermProperty, CapturesMaximalEnergyAndHasMinKNnzNonzeros) {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> ku(1, 10);
  for (int trial = 0; trial < 100; ++trial) {
    Vector x = random_vector(10, rng);
    for (Index i = 0; i < 10; ++i)
      if (rng() % 3 == 0) x[i] = 0.0;
    const int k = ku(rng);
    const auto r = best_k_term(x, k);
    const Index nnz = (x.array() != 0.0).count();
    EXPECT_EQ((r.approximation.array() != 0.0).count(), std::min<Index>(k, nnz));
    EXPECT_NEAR(r.approximation.squaredNorm(), oracle::best_k_energy(x, k), 1e-12);
  }
}

TEST(SensingOperator, ApplyExamples) {
  const SensingOperator id(Matrix::Identity(3, 3));
  const Vector x = (Vector(3) << 1, 2, 3).finished();
  EXPECT_EQ(id.apply(x), x);
  EXPECT_EQ(SensingOperator(Matrix::Zero(2, 3)).apply(x), Vector::Zero(2));

  auto eye = std::make_shared<const Matrix>(Matrix::Identity(3, 3));
  const SensingOperator full({0, 1, 2}, eye, true);
  EXPECT_EQ(full.apply(x), x);
  EXPECT_TRUE(full.has_orthonormal_rows());
  EXPECT_EQ(full.matrix(), Matrix::Identity(3, 3));

  const SensingOperator pick({2, 0}, eye, true);
  EXPECT_EQ(pick.apply(x), (Vector(2) << 3, 1).finished());
  EXPECT_THROW(id.apply(Vector::Zero(2)), std::invalid_argument);
}

TEST(SensingOperator, RejectsInvalidShapes) {
  EXPECT_THROW(SensingOperator(Matrix::Zero(4, 3)), std::invalid_argument);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = std::nan("");
  EXPECT_THROW(SensingOperator{bad}, std::invalid_argument);
  auto eye = std::make_shared<const Matrix>(Matrix::Identity(3, 3));
  EXPECT_THROW(SensingOperator({0, 0}, eye, true), std::invalid_argument);
  EXPECT_THROW(SensingOperator({3}, eye, true), std::invalid_argument);
}

TEST(SnrDb, Examples) {
  const Vector x = (Vector(3) << 1, -2, 2).finished();
  EXPECT_NEAR(snr_db(x, Vector::Zero(3)), 0.0, 1e-12);
  EXPECT_EQ(snr_db(x, x), kDefaultSnrCapDb);
  Vector e = Vector::Zero(3);
  e[1] = 0.1 * x.norm();
  EXPECT_NEAR(snr_db(x, x + e), 20.0, 1e-9);
  EXPECT_THROW(snr_db(Vector::Zero(3), x), std::invalid_argument);
  EXPECT_THROW(snr_db(x, Vector::Zero(2)), std::invalid_argument);
}

TEST(SnrDbProperty, InvariantUnderJointScaling) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> cu(0.01, 100.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector x = random_vector(20, rng);
    const Vector xh = x + 0.01 * random_vector(20, rng);
    const double c = cu(rng);
    EXPECT_NEAR(snr_db(c * x, c * xh), snr_db(x, xh), 1e-9);
    EXPECT_NEAR(snr_db(x, xh), oracle::snr_db(x, xh), 1e-9);
  }
}
