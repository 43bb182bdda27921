#include <gtest/gtest.h>

#include "catmorph/error.hpp"
#include "catmorph/grayscale.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace catmorph {
namespace {

ScalarField line(std::vector<double> v) {
  const std::size_t n = v.size();
  return ScalarField(Shape{n}, std::move(v));
}

const auto kCity1 = StructuringElement::ball(1, Norm::city_block);

TEST(GrayDilate, SlidingMax1D) {
  EXPECT_EQ(gray::dilate(line({0.2, 0.8, 0.5}), kCity1), line({0.8, 0.8, 0.8}));
  EXPECT_EQ(gray::dilate(line({0, 1, 0, 0}), kCity1), line({1, 1, 1, 0}));
}

TEST(GrayErode, SlidingMin1D) {
  EXPECT_EQ(gray::erode(line({0.2, 0.8, 0.5}), kCity1), line({0.2, 0.2, 0.5}));
}

TEST(GrayDilate, OriginElementIsIdentity) {
  testing::Rng rng(1);
  const ScalarField f = testing::random_field(rng, Shape{6, 6});
  EXPECT_EQ(gray::dilate(f, StructuringElement::origin()), f);
  EXPECT_EQ(gray::erode(f, StructuringElement::origin()), f);
}

TEST(GrayErode, ConstantUnchanged) {
  const ScalarField f(Shape{5, 5}, 0.3);
  EXPECT_EQ(gray::erode(f, StructuringElement::ball(2)), f);
}

TEST(GrayDilate, EmptyNeighborhoodIsAnError) {
  const auto far = StructuringElement::from_offsets({Coord{5, 0, 0}}, false);
  EXPECT_THROW(gray::dilate(line({1, 2}), far), DataError);
}

TEST(GrayOpen, RemovesIsolatedPeak) {
  EXPECT_EQ(gray::open(line({0, 0, 1, 0, 0}), kCity1), line({0, 0, 0, 0, 0}));
  EXPECT_EQ(gray::close(line({1, 1, 0, 1, 1}), kCity1), line({1, 1, 1, 1, 1}));
}

TEST(GrayOpen, IsolatedPeak2D) {
  ScalarField f(Shape{5, 5}, 0.0);
  f[12] = 1.0;
  EXPECT_EQ(gray::open(f, StructuringElement::ball(1)), ScalarField(Shape{5, 5}, 0.0));
}

class GrayRandom : public ::testing::TestWithParam<Norm> {};

TEST_P(GrayRandom, FastEngineMatchesNaiveBitExact) {
  testing::Rng rng(11);
  for (double r : {1.0, 2.0, 2.5, 3.0}) {
    const auto se = StructuringElement::ball(r, GetParam());
    for (int t = 0; t < 5; ++t) {
      const ScalarField f = testing::random_field(rng, Shape{16, 16});
      EXPECT_EQ(gray::dilate(f, se), gray::dilate(f, se, gray::Engine::naive));
      EXPECT_EQ(gray::erode(f, se), gray::erode(f, se, gray::Engine::naive));
    }
  }
}

TEST_P(GrayRandom, MatchesBruteForce) {
  testing::Rng rng(12);
  for (double r : {1.0, 2.0, 3.0}) {
    const ScalarField f = testing::random_field(rng, Shape{9, 7});
    const auto se = StructuringElement::ball(r, GetParam());
    EXPECT_EQ(gray::dilate(f, se), oracle::gray_dilate(f, r, GetParam()));
    EXPECT_EQ(gray::erode(f, se), oracle::gray_erode(f, r, GetParam()));
  }
}

TEST_P(GrayRandom, Adjunction) {
  testing::Rng rng(13);
  std::uniform_real_distribution<double> jitter(-0.2, 0.2);
  const auto se = StructuringElement::ball(1.5, GetParam());
  for (int t = 0; t < 100; ++t) {
    const ScalarField f = testing::random_field(rng, Shape{8, 8});
    ScalarField g = gray::dilate(f, se);
    for (double& v : g.values()) v += jitter(rng) * (t % 2);
    const ScalarField df = gray::dilate(f, se);
    const ScalarField eg = gray::erode(g, se);
    bool lhs = true, rhs = true;
    for (std::size_t p = 0; p < f.size(); ++p) {
      lhs = lhs && df[p] <= g[p];
      rhs = rhs && f[p] <= eg[p];
    }
    EXPECT_EQ(lhs, rhs);
  }
}

TEST_P(GrayRandom, DualityUnderNegation) {
  testing::Rng rng(14);
  const auto se = StructuringElement::ball(2, GetParam());
  const ScalarField f = testing::random_field(rng, Shape{8, 8});
  ScalarField neg = f;
  for (double& v : neg.values()) v = -v;
  ScalarField dual = gray::dilate(neg, se);
  for (double& v : dual.values()) v = -v;
  EXPECT_EQ(gray::erode(f, se), dual);
}

TEST_P(GrayRandom, OpenCloseIdempotentAndOrdered) {
  testing::Rng rng(15);
  const auto se = StructuringElement::ball(2, GetParam());
  for (int t = 0; t < 10; ++t) {
    const ScalarField f = testing::random_field(rng, Shape{10, 10});
    const ScalarField o = gray::open(f, se);
    const ScalarField c = gray::close(f, se);
    EXPECT_EQ(gray::open(o, se), o);
    EXPECT_EQ(gray::close(c, se), c);
    const ScalarField ed = gray::erode(gray::dilate(f, se), se);
    for (std::size_t p = 0; p < f.size(); ++p) {
      EXPECT_LE(o[p], f[p]);
      EXPECT_GE(c[p], f[p]);
      EXPECT_GE(ed[p], f[p]);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Norms, GrayRandom,
                         ::testing::Values(Norm::euclidean, Norm::city_block, Norm::chessboard));

TEST(StructuringElement, BallOffsetsByNorm) {
  EXPECT_EQ(StructuringElement::ball(1, Norm::city_block).offsets(2).size(), 5u);
  EXPECT_EQ(StructuringElement::ball(1, Norm::chessboard).offsets(2).size(), 9u);
  EXPECT_EQ(StructuringElement::ball(2, Norm::euclidean).offsets(2).size(), 13u);
  EXPECT_EQ(StructuringElement::ball(1.5, Norm::euclidean).offsets(2).size(), 9u);
  EXPECT_EQ(StructuringElement::ball(2, Norm::city_block).offsets(1).size(), 5u);
}

TEST(StructuringElement, RejectsBadRadius) {
  EXPECT_THROW(StructuringElement::ball(0), ArgumentError);
  EXPECT_THROW(StructuringElement::ball(INFINITY), ArgumentError);
}

TEST(StructuringElement, EuclideanLadderIsDistinctNorms) {
  const auto ladder = radius_ladder(Norm::euclidean, 2.0, 2);
  ASSERT_EQ(ladder.size(), 3u);
  EXPECT_DOUBLE_EQ(ladder[0], 1.0);
  EXPECT_DOUBLE_EQ(ladder[1], std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(ladder[2], 2.0);
  EXPECT_EQ(radius_ladder(Norm::chessboard, 3.0, 2), (std::vector<double>{1, 2, 3}));
}

}  // namespace
}  // namespace catmorph
