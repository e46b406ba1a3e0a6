#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "disloc/polynomial.hpp"

using disloc::Polynomial;
using disloc::real_roots;

TEST(Polynomial, EvaluateAndDerivative) {
  const Polynomial p({1.0, -3.0, 0.0, 2.0});  // 1 - 3x + 2x^3
  EXPECT_EQ(p.degree(), 3);
  EXPECT_DOUBLE_EQ(p(2.0), 11.0);
  const Polynomial dp = p.derivative();
  EXPECT_DOUBLE_EQ(dp(2.0), 21.0);
  EXPECT_EQ((p - p).degree(), -1);
}

TEST(Polynomial, ProductOfLinearFactors) {
  const Polynomial p = Polynomial::linear(-1.0, 1.0) * Polynomial::linear(-2.0, 1.0) * Polynomial::linear(3.0, 1.0);
  const auto roots = real_roots(p);
  ASSERT_EQ(roots.size(), 3u);
  EXPECT_NEAR(roots[0], -3.0, 1e-14);
  EXPECT_NEAR(roots[1], 1.0, 1e-14);
  EXPECT_NEAR(roots[2], 2.0, 1e-14);
}

TEST(RealRoots, NoRealRoots) {
  EXPECT_TRUE(real_roots(Polynomial({1.0, 0.0, 1.0})).empty());
  EXPECT_TRUE(real_roots(Polynomial::constant(4.0)).empty());
}

TEST(RealRoots, ComplexPairPlusRealRoot) {
  // (x^2 + 1)(x - 0.5)
  const Polynomial p = Polynomial({1.0, 0.0, 1.0}) * Polynomial::linear(-0.5, 1.0);
  const auto roots = real_roots(p);
  ASSERT_EQ(roots.size(), 1u);
  EXPECT_NEAR(roots[0], 0.5, 1e-15);
}

TEST(RealRoots, DoubleRootReportedOnce) {
  const Polynomial p = Polynomial::linear(-1.0, 1.0) * Polynomial::linear(-1.0, 1.0) * Polynomial::linear(2.0, 1.0);
  const auto roots = real_roots(p);
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_NEAR(roots[0], -2.0, 1e-12);
  EXPECT_NEAR(roots[1], 1.0, 1e-7);
}

// Random products of distinct linear factors: every root recovered.
TEST(RealRoots, RandomDistinctRootsProperty) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> dist(-20.0, 20.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int deg = 1 + trial % 5;
    std::vector<double> want;
    Polynomial p = Polynomial::constant(std::ldexp(1.0, trial % 7 - 3));
    for (int i = 0; i < deg; ++i) {
      const double r = dist(rng);
      want.push_back(r);
      p = p * Polynomial::linear(-r, 1.0);
    }
    std::sort(want.begin(), want.end());
    bool separated = true;
    for (int i = 1; i < deg; ++i) separated = separated && want[i] - want[i - 1] > 1e-3;
    if (!separated) continue;
    const auto got = real_roots(p);
    ASSERT_EQ(got.size(), want.size()) << "trial " << trial;
    for (int i = 0; i < deg; ++i) EXPECT_NEAR(got[i], want[i], 1e-8 * (1.0 + std::abs(want[i])));
  }
}
