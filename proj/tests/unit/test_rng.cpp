#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "splp/rng.hpp"

using namespace splp;

TEST(Rng, DeriveSeedSeparatesStreams) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(7, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_NE(derive_seed(7, 1, 2), derive_seed(7, 2, 1));
  EXPECT_EQ(derive_seed(7, 3, 4), derive_seed(derive_seed(7, 3), 4));
}

TEST(Rng, Uniform01Range) {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = uniform01(rng);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Rng, NormalMoments) {
  Rng rng(2);
  const int n = 200000;
  double s = 0.0;
  double s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = standard_normal(rng);
    s += z;
    s2 += z * z;
  }
  EXPECT_NEAR(s / n, 0.0, 4.0 / std::sqrt(n));
  EXPECT_NEAR(s2 / n, 1.0, 4.0 * std::sqrt(2.0 / n));
}

class GammaMoments : public ::testing::TestWithParam<double> {};

TEST_P(GammaMoments, MeanAndVarianceEqualShape) {
  const double shape = GetParam();
  Rng rng(3);
  const int n = 200000;
  double s = 0.0;
  double s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = gamma_variate(rng, shape);
    ASSERT_GT(g, 0.0);
    s += g;
    s2 += g * g;
  }
  const double mean = s / n;
  const double var = s2 / n - mean * mean;
  EXPECT_NEAR(mean, shape, 4.0 * std::sqrt(shape / n));
  // Var of the sample variance for Gamma: (μ4 − σ⁴)/n with μ4 = 3k(k+2)
  const double sd_var = std::sqrt((3.0 * shape * (shape + 2.0) - shape * shape) / n);
  EXPECT_NEAR(var, shape, 4.0 * sd_var);
}

INSTANTIATE_TEST_SUITE_P(Shapes, GammaMoments, ::testing::Values(0.2, 0.5, 1.0, 2.5, 10.0));

TEST(Rng, SplitMixIsDeterministic) {
  SplitMix64 a(99);
  SplitMix64 b(99);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a(), b());
}
