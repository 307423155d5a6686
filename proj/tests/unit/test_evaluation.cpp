#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

#include "brute_force.hpp"
#include "splp/error.hpp"
#include "splp/evaluation.hpp"
#include "splp/mmsb.hpp"

using namespace splp;
using linalg::DenseMatrix;

namespace {

DenseMatrix random_theta(std::size_t n, std::size_t k, std::uint64_t seed) {
  Rng rng(seed);
  mmsb::MmsbParams p;
  p.n = n;
  p.k = k;
  p.alpha = 0.5;
  p.b = DenseMatrix::identity(k);
  return mmsb::sample_theta(p, rng).theta;
}

DenseMatrix permute_columns(const DenseMatrix& m, const std::vector<std::size_t>& perm) {
  DenseMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, perm[j]);
  return out;
}

std::vector<std::size_t> range(std::size_t a, std::size_t b) {
  std::vector<std::size_t> v(b - a);
  std::iota(v.begin(), v.end(), a);
  return v;
}

}  // namespace

TEST(EntrywiseError, IdenticalIsZeroIdentity) {
  const auto theta = random_theta(50, 3, 1);
  const auto e = eval::entrywise_error(theta, theta);
  EXPECT_EQ(e.error, 0.0);
  EXPECT_EQ(e.permutation, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(EntrywiseError, SwappedColumns) {
  const auto theta = random_theta(50, 3, 2);
  const auto swapped = permute_columns(theta, {0, 2, 1});
  const auto e = eval::entrywise_error(swapped, theta);
  EXPECT_EQ(e.error, 0.0);
  EXPECT_EQ(e.permutation, (std::vector<std::size_t>{0, 2, 1}));
}

TEST(EntrywiseError, SingleEntryPerturbation) {
  DenseMatrix theta{{0.2, 0.8}, {0.6, 0.4}, {0.9, 0.1}};
  auto hat = theta;
  hat(1, 0) = std::min(1.0, hat(1, 0) + 0.05);
  EXPECT_NEAR(eval::entrywise_error(hat, theta).error, 0.05, 1e-15);
}

TEST(EntrywiseError, MatchesBruteForceAndProperties) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = random_theta(30, 4, 100 + seed);
    const auto b = random_theta(30, 4, 200 + seed);
    const auto e = eval::entrywise_error(a, b);
    EXPECT_NEAR(e.error, oracle::permutation_error(a, b), 1e-15);
    EXPECT_NEAR(e.error, eval::entrywise_error(b, a).error, 1e-15);
    EXPECT_LE(e.error, linalg::max_abs_diff(a, b));
    const std::vector<std::size_t> perm{3, 1, 0, 2};
    EXPECT_NEAR(e.error, eval::entrywise_error(permute_columns(a, perm), permute_columns(b, perm)).error, 1e-15);
    double mx = 0.0;
    for (double v : e.per_column_errors) mx = std::max(mx, v);
    EXPECT_EQ(mx, e.error);
  }
}

TEST(EntrywiseError, BottleneckBranchMatchesExhaustive) {
  // k = 9 goes through bottleneck assignment; compare to the permutation it must find.
  const auto theta = random_theta(60, 9, 5);
  const std::vector<std::size_t> perm{4, 0, 8, 2, 7, 1, 3, 6, 5};
  auto hat = permute_columns(theta, perm);
  hat(3, 2) += 0.01;
  const auto e = eval::entrywise_error(hat, theta);
  EXPECT_NEAR(e.error, 0.01, 1e-12);
  EXPECT_EQ(e.permutation, perm);
}

TEST(BottleneckAssignment, SmallCostMatrix) {
  DenseMatrix cost{{4, 1, 3}, {2, 0, 5}, {3, 2, 2}};
  const auto a = eval::bottleneck_assignment(cost);
  double worst = 0.0;
  for (std::size_t j = 0; j < 3; ++j) worst = std::max(worst, cost(j, a[j]));
  EXPECT_EQ(worst, 2.0);
}

TEST(BottleneckAssignment, AgreesWithExhaustiveOnRandomCosts) {
  Rng rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    DenseMatrix cost(6, 6);
    for (double& v : cost.data()) v = uniform01(rng);
    const auto a = eval::bottleneck_assignment(cost);
    double got = 0.0;
    for (std::size_t j = 0; j < 6; ++j) got = std::max(got, cost(j, a[j]));
    std::vector<std::size_t> p = range(0, 6);
    double best = 1e9;
    do {
      double w = 0.0;
      for (std::size_t j = 0; j < 6; ++j) w = std::max(w, cost(j, p[j]));
      best = std::min(best, w);
    } while (std::next_permutation(p.begin(), p.end()));
    EXPECT_EQ(got, best);
  }
}

TEST(EntrywiseError, ShapeMismatch) {
  EXPECT_THROW(eval::entrywise_error(DenseMatrix(3, 2), DenseMatrix(3, 3)), InvalidInput);
  EXPECT_THROW(eval::entrywise_error(DenseMatrix(4, 2), DenseMatrix(3, 2)), InvalidInput);
}

TEST(Binarize, ThresholdIsInclusive) {
  DenseMatrix t{{0.5, 0.49999}, {0.2, 0.7}};
  const auto cs = eval::binarize(t);
  ASSERT_EQ(cs.complexes.size(), 2u);
  EXPECT_EQ(cs.complexes[0], (std::vector<std::size_t>{0}));
  EXPECT_EQ(cs.complexes[1], (std::vector<std::size_t>{1}));
}

TEST(Binarize, AllZerosIsEmpty) { EXPECT_TRUE(eval::binarize(DenseMatrix(5, 3)).complexes.empty()); }

TEST(Binarize, IdempotentOnBinaryMatrices) {
  DenseMatrix t{{1, 0, 1}, {0, 1, 1}, {1, 1, 0}};
  const auto cs = eval::binarize(t);
  DenseMatrix back(3, cs.complexes.size());
  for (std::size_t j = 0; j < cs.complexes.size(); ++j)
    for (std::size_t i : cs.complexes[j]) back(i, j) = 1.0;
  EXPECT_EQ(back, t);
  EXPECT_EQ(eval::binarize(back).complexes, cs.complexes);
}

TEST(OverlapScore, Values) {
  EXPECT_EQ(eval::overlap_score(range(1, 11), range(6, 16)), 0.25);
  EXPECT_EQ(eval::overlap_score(range(0, 4), range(0, 4)), 1.0);
  EXPECT_EQ(eval::overlap_score(range(0, 4), range(4, 8)), 0.0);
  EXPECT_EQ(eval::overlap_score({}, range(0, 3)), 0.0);
}

TEST(MergeComplexes, IdenticalSetsMerge) {
  eval::ComplexSet cs{{range(0, 5), range(0, 5)}, {1, 1}};
  const auto out = eval::merge_complexes(cs, 0.8);
  ASSERT_EQ(out.complexes.size(), 1u);
  EXPECT_EQ(out.merged_from[0], 2u);
}

TEST(MergeComplexes, DisjointUnchanged) {
  eval::ComplexSet cs{{range(0, 5), range(5, 9)}, {1, 1}};
  const auto out = eval::merge_complexes(cs, 0.01);
  EXPECT_EQ(out.complexes, cs.complexes);
}

TEST(MergeComplexes, OverlapExample) {
  eval::ComplexSet cs{{range(1, 11), range(6, 16)}, {1, 1}};
  const auto out = eval::merge_complexes(cs, 0.2);
  ASSERT_EQ(out.complexes.size(), 1u);
  EXPECT_EQ(out.complexes[0], range(1, 16));
}

TEST(MergeComplexes, FixpointLeavesNoQualifyingPair) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    eval::ComplexSet cs;
    for (int c = 0; c < 12; ++c) {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < 30; ++i)
        if (uniform01(rng) < 0.3) members.push_back(i);
      if (!members.empty()) cs.complexes.push_back(members);
    }
    const std::size_t before = cs.complexes.size();
    const auto out = eval::merge_complexes(cs, 0.3);
    EXPECT_LE(out.complexes.size(), before);
    std::size_t total = 0;
    for (std::size_t m : out.merged_from) total += m;
    EXPECT_EQ(total, before);
    for (std::size_t i = 0; i < out.complexes.size(); ++i)
      for (std::size_t j = i + 1; j < out.complexes.size(); ++j)
        EXPECT_LT(eval::overlap_score(out.complexes[i], out.complexes[j]), 0.3);
  }
}

TEST(MergeComplexes, HighestScoreFirst) {
  // {0..9}∪{0..8} scores 0.9, {0..9}∪{5..14} scores 0.25; at 0.2 the first pair merges first.
  eval::ComplexSet cs{{range(0, 10), range(5, 15), range(0, 9)}, {1, 1, 1}};
  const auto out = eval::merge_complexes(cs, 0.2);
  ASSERT_EQ(out.complexes.size(), 1u);
  EXPECT_EQ(out.complexes[0], range(0, 15));
  const auto strict = eval::merge_complexes(cs, 0.5);
  ASSERT_EQ(strict.complexes.size(), 2u);
  EXPECT_EQ(strict.complexes[0], range(0, 10));
  EXPECT_EQ(strict.complexes[1], range(5, 15));
}

TEST(MergeComplexes, ThresholdDomain) {
  eval::ComplexSet cs{{range(0, 2)}, {1}};
  EXPECT_THROW(eval::merge_complexes(cs, 0.0), InvalidInput);
  EXPECT_THROW(eval::merge_complexes(cs, 1.5), InvalidInput);
  EXPECT_NO_THROW(eval::merge_complexes(cs, 1.0));
}

TEST(WriteComplexes, TabSeparatedLines) {
  eval::ComplexSet cs{{{0, 2}, {1}}, {1, 1}};
  std::ostringstream os;
  eval::write_complexes(os, cs, {"a", "b", "c"});
  EXPECT_EQ(os.str(), "a\tc\nb\n");
}
