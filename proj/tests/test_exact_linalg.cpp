#include <gtest/gtest.h>

#include "generators.hpp"
#include "hodge/exact_linalg.hpp"

namespace hodge {
namespace {

std::vector<Rational> vec(std::initializer_list<long> xs) {
  std::vector<Rational> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

TEST(Rref, ZeroMatrix) {
  auto [r, piv] = rref(RatMatrix{{0}});
  EXPECT_EQ(r, (RatMatrix{{0}}));
  EXPECT_TRUE(piv.empty());
}

TEST(Rref, IdentityIsFixed) {
  auto [r, piv] = rref(RatMatrix::identity(3));
  EXPECT_EQ(r, RatMatrix::identity(3));
  EXPECT_EQ(piv, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Rref, DependentRowsKeepShape) {
  auto [r, piv] = rref(RatMatrix{{2, 4}, {1, 2}});
  EXPECT_EQ(r, (RatMatrix{{1, 2}, {0, 0}}));
  EXPECT_EQ(piv, (std::vector<std::size_t>{0}));
}

TEST(Rref, EmptyShapes) {
  EXPECT_EQ(rref(RatMatrix(0, 3)).rank(), 0u);
  EXPECT_EQ(rref(RatMatrix(2, 0)).reduced.rows(), 2u);
}

TEST(Rref, ProducesFractions) {
  auto [r, piv] = rref(RatMatrix{{3, 1}, {0, 2}});
  EXPECT_EQ(r, RatMatrix::identity(2));
  auto [r2, piv2] = rref(RatMatrix{{3, 1}});
  EXPECT_EQ(r2(0, 1), Rational(1, 3));
}

TEST(Kernel, ZeroMatrixGivesFullSpace) {
  const Subspace k = kernel_basis(RatMatrix(2, 3));
  EXPECT_EQ(k, Subspace::full(3));
}

TEST(Kernel, IdentityGivesZero) { EXPECT_TRUE(kernel_basis(RatMatrix::identity(2)).is_zero()); }

TEST(Kernel, SingleEquation) {
  const Subspace k = kernel_basis(RatMatrix{{1, 1}});
  EXPECT_EQ(k.dim(), 1u);
  EXPECT_EQ(k, Subspace::span(RatMatrix{{1, -1}}));
}

TEST(SubspaceSum, Basics) {
  const Subspace e1 = Subspace::span(RatMatrix{{1, 0}});
  const Subspace e2 = Subspace::span(RatMatrix{{0, 1}});
  EXPECT_EQ(subspace_sum(e1, Subspace(2)), e1);
  EXPECT_EQ(subspace_sum(e1, e2), Subspace::full(2));
  const Subspace s = subspace_sum(Subspace::span(RatMatrix{{1, 1, 0}}), Subspace::span(RatMatrix{{1, 1, 1}}));
  EXPECT_EQ(s.dim(), 2u);
  EXPECT_TRUE(s.contains(vec({1, 1, 0})));
  EXPECT_TRUE(s.contains(vec({1, 1, 1})));
  EXPECT_FALSE(s.contains(vec({1, 0, 0})));
}

TEST(SubspaceSum, AmbientMismatchThrows) {
  EXPECT_THROW(subspace_sum(Subspace(2), Subspace(3)), DimensionError);
  EXPECT_THROW(subspace_intersect(Subspace(2), Subspace(3)), DimensionError);
  EXPECT_THROW(is_complementary(Subspace(2), Subspace(3)), DimensionError);
}

TEST(SubspaceIntersect, Basics) {
  const Subspace u = Subspace::span(RatMatrix{{1, 0, 0}, {0, 1, 0}});
  EXPECT_EQ(subspace_intersect(u, Subspace::full(3)), u);
  EXPECT_TRUE(subspace_intersect(Subspace::span(RatMatrix{{1, 0}}), Subspace::span(RatMatrix{{0, 1}})).is_zero());
  const Subspace w = Subspace::span(RatMatrix{{0, 1, 0}, {0, 0, 1}});
  EXPECT_EQ(subspace_intersect(u, w), Subspace::span(RatMatrix{{0, 1, 0}}));
}

TEST(Complementary, Examples) {
  const Subspace e1 = Subspace::span(RatMatrix{{1, 0}});
  const Subspace e2 = Subspace::span(RatMatrix{{0, 1}});
  EXPECT_TRUE(is_complementary(e1, e2));
  EXPECT_FALSE(is_complementary(e1, e1));
  EXPECT_TRUE(is_complementary(Subspace::span(RatMatrix{{1, 1}}), Subspace::span(RatMatrix{{1, -1}})));
}

TEST(Preimage, OfZeroIsKernel) {
  const RatMatrix m{{1, 2, 3}, {2, 4, 6}};
  EXPECT_EQ(preimage(m, Subspace(2)), kernel_basis(m));
  EXPECT_EQ(preimage(m, Subspace::full(2)), Subspace::full(3));
}

TEST(ComplementIn, Dimension) {
  const Subspace whole = Subspace::full(3);
  const Subspace sub = Subspace::span(RatMatrix{{1, 1, 1}});
  const Subspace c = complement_in(whole, sub);
  EXPECT_EQ(c.dim(), 2u);
  EXPECT_TRUE(is_complementary(c, sub));
}

TEST(CoordinateSystem, RecoversCoefficients) {
  const RatMatrix basis{{1, 1, 0}, {0, 1, 1}};
  CoordinateSystem cs(basis);
  const RatMatrix v = RatMatrix{{2, -3}} * basis;
  EXPECT_EQ(cs.coordinates(v), (RatMatrix{{2, -3}}));
  EXPECT_THROW(CoordinateSystem(RatMatrix{{1, 1}, {2, 2}}), DimensionError);
}

class ExactLinalgProperty : public ::testing::TestWithParam<int> {};

TEST_P(ExactLinalgProperty, RankNullityAndIdempotence) {
  testing::Rng rng(1000 + GetParam());
  const auto rows = std::size_t(testing::uniform(rng, 0, 6));
  const auto cols = std::size_t(testing::uniform(rng, 0, 6));
  RatMatrix m = testing::random_matrix<Rational>(rng, rows, cols);
  if (rows > 1 && testing::uniform(rng, 0, 1)) {
    // force a dependency
    for (std::size_t j = 0; j < cols; ++j) m(rows - 1, j) = m(0, j) * 2 - m(1, j);
  }
  const auto r = rref(m);
  EXPECT_EQ(r.rank() + kernel_basis(m).dim(), cols);
  EXPECT_EQ(rref(r.reduced).reduced, r.reduced);
  EXPECT_TRUE((m * kernel_basis(m).basis().transpose()).is_zero());
}

TEST_P(ExactLinalgProperty, ModularIdentity) {
  testing::Rng rng(2000 + GetParam());
  const auto n = std::size_t(testing::uniform(rng, 1, 8));
  const Subspace u = Subspace::span(testing::random_matrix<Rational>(rng, std::size_t(testing::uniform(rng, 0, long(n))), n));
  const Subspace w = Subspace::span(testing::random_matrix<Rational>(rng, std::size_t(testing::uniform(rng, 0, long(n))), n));
  const Subspace sum = subspace_sum(u, w);
  const Subspace meet = subspace_intersect(u, w);
  EXPECT_EQ(sum.dim() + meet.dim(), u.dim() + w.dim());
  EXPECT_TRUE(u.contains(meet));
  EXPECT_TRUE(w.contains(meet));
  EXPECT_TRUE(sum.contains(u));
  EXPECT_TRUE(sum.contains(w));
}

TEST_P(ExactLinalgProperty, CanonicalForm) {
  testing::Rng rng(3000 + GetParam());
  const auto n = std::size_t(testing::uniform(rng, 1, 6));
  const auto k = std::size_t(testing::uniform(rng, 1, long(n)));
  const RatMatrix gens = testing::random_matrix<Rational>(rng, k, n);
  // Another spanning set: an invertible recombination plus a redundant row.
  RatMatrix other = testing::random_invertible(rng, k) * gens;
  RatMatrix extra(1, n);
  for (std::size_t j = 0; j < n; ++j) extra(0, j) = gens(0, j) * 3;
  other = other.vstack(extra);
  EXPECT_EQ(Subspace::span(gens), Subspace::span(other));
}

INSTANTIATE_TEST_SUITE_P(Random, ExactLinalgProperty, ::testing::Range(0, 40));

}  // namespace
}  // namespace hodge
