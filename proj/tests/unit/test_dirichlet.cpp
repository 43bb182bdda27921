#include <gtest/gtest.h>

#include "catmorph/dirichlet.hpp"
#include "catmorph/error.hpp"
#include "catmorph/simplex.hpp"
#include "generators.hpp"

namespace catmorph {
namespace {

const auto kR1 = StructuringElement::ball(1);

DirichletImage spike(Shape shape, std::size_t at, std::vector<double> peak) {
  DirichletImage f(shape, 3, std::vector<double>(shape.pixel_count() * 3, 1.0));
  for (std::size_t k = 0; k < 3; ++k) f.at(at, k) = peak[k];
  return f;
}

DirichletImage permuted(const DirichletImage& f, const std::vector<std::size_t>& perm) {
  DirichletImage out = f;
  for (std::size_t k = 0; k < perm.size(); ++k) out.set_channel(k, f.channel(perm[k]));
  return out;
}

TEST(DirichletDilate, SpreadsPeakToNeighbors) {
  const auto f = spike(Shape{5, 5}, 12, {5, 1, 1});
  const auto g = dirichlet::dilate(f, kR1);
  for (std::size_t p : {7u, 11u, 12u, 13u, 17u}) EXPECT_EQ(g.at(p, 0), 5.0) << p;
  EXPECT_EQ(g.at(6, 0), 1.0);
  EXPECT_EQ(g.channel(1), f.channel(1));
}

TEST(DirichletDilate, ConstantUnchanged) {
  const DirichletImage f(Shape{4, 4}, 3, std::vector<double>(48, 2.5));
  EXPECT_EQ(dirichlet::dilate(f, kR1), f);
  EXPECT_EQ(dirichlet::erode(f, kR1), f);
}

TEST(DirichletOpen, RemovesSpike) {
  const DirichletImage flat(Shape{5, 5}, 3, std::vector<double>(75, 1.0));
  EXPECT_EQ(dirichlet::open(spike(Shape{5, 5}, 12, {5, 1, 1}), kR1), flat);
}

TEST(DirichletSubset, AllChannelsEqualsFullOperator) {
  testing::Rng rng(3);
  const auto f = testing::random_dirichlet(rng, Shape{6, 6}, 3);
  EXPECT_EQ(dirichlet::dilate_subset(f, kR1, {0, 1, 2}), dirichlet::dilate(f, kR1));
  EXPECT_EQ(dirichlet::erode_subset(f, kR1, {}), f);
}

TEST(DirichletSubset, OtherChannelsBitIdentical) {
  testing::Rng rng(4);
  const auto f = testing::random_dirichlet(rng, Shape{6, 6}, 3);
  const auto g = dirichlet::close_subset(f, StructuringElement::ball(2), {1});
  EXPECT_EQ(g.channel(0), f.channel(0));
  EXPECT_EQ(g.channel(2), f.channel(2));
  EXPECT_NE(g.channel(1), f.channel(1));
}

TEST(DirichletSubset, RejectsUnknownChannel) {
  testing::Rng rng(5);
  const auto f = testing::random_dirichlet(rng, Shape{3, 3}, 3);
  EXPECT_THROW(dirichlet::dilate_subset(f, kR1, {3}), ArgumentError);
}

TEST(DirichletProperties, LawsOnRandomImages) {
  testing::Rng rng(6);
  const auto se = StructuringElement::ball(1.5);
  for (int t = 0; t < 20; ++t) {
    const auto f = testing::random_dirichlet(rng, Shape{8, 8}, 4);
    const auto d = dirichlet::dilate(f, se);
    const auto e = dirichlet::erode(f, se);
    const auto o = dirichlet::open(f, se);
    EXPECT_EQ(dirichlet::open(o, se), o);
    const auto ed = dirichlet::erode(d, se);
    for (std::size_t k = 0; k < f.data().size(); ++k) EXPECT_GE(ed.data()[k], f.data()[k]);

    const auto mf = magnitude_map(f), md = magnitude_map(d), me = magnitude_map(e);
    for (std::size_t p = 0; p < mf.size(); ++p) {
      EXPECT_GE(md[p], mf[p]);
      EXPECT_LE(me[p], mf[p]);
    }
    EXPECT_FALSE(validate(dirichlet_expectation(d), 1e-9).has_value());
    EXPECT_FALSE(validate(dirichlet_expectation(e), 1e-9).has_value());
  }
}

TEST(DirichletProperties, CommutesWithChannelPermutation) {
  testing::Rng rng(7);
  const std::vector<std::size_t> perm{2, 0, 3, 1};
  const auto se = StructuringElement::ball(2, Norm::chessboard);
  for (int t = 0; t < 10; ++t) {
    const auto f = testing::random_dirichlet(rng, Shape{7, 6}, 4);
    EXPECT_EQ(dirichlet::dilate(permuted(f, perm), se), permuted(dirichlet::dilate(f, se), perm));
    EXPECT_EQ(dirichlet::erode(permuted(f, perm), se), permuted(dirichlet::erode(f, se), perm));
  }
}

}  // namespace
}  // namespace catmorph
