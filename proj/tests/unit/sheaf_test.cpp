#include <gtest/gtest.h>

#include <random>

#include "cbsheaf/error.hpp"
#include "cbsheaf/sheaf.hpp"
#include "generators.hpp"

using namespace cbsheaf;
using namespace cbsheaf::testkit;

namespace {

SpacePtr share(FiniteSpace s) { return std::make_shared<const FiniteSpace>(std::move(s)); }
SheafPtr share(Sheaf f) { return std::make_shared<const Sheaf>(std::move(f)); }

}  // namespace

TEST(Sheaf, ValidatesFunctoriality) {
  // Chain a -> b -> c with U_c = {a,b,c}; restrictions of 2 then 3 must compose to 6.
  const SpacePtr s = share(FiniteSpace::from_min_nbhds({"a", "b", "c"}, {{"a"}, {"a", "b"}, {"a", "b", "c"}}));
  auto scalar = [](int v) { return RatMatrix::from_dense(1, 1, {Rational(v)}); };
  std::vector<std::vector<RatMatrix>> res{{scalar(1)}, {scalar(2), scalar(1)}, {scalar(6), scalar(3), scalar(1)}};
  EXPECT_NO_THROW(Sheaf(s, {1, 1, 1}, res));
  res[2][0] = scalar(5);
  EXPECT_THROW(Sheaf(s, {1, 1, 1}, res), Error);
  res[2][0] = scalar(6);
  res[1][1] = scalar(2);  // diagonal must be the identity
  EXPECT_THROW(Sheaf(s, {1, 1, 1}, res), Error);
}

TEST(Sheaf, SkyscraperLivesOnTheClosure) {
  const SpacePtr s = share(star_space(3));
  const Sheaf leaf = skyscraper(s, s->index_of("l1"), 2);
  EXPECT_EQ(leaf.stalk_dims(), (std::vector<std::size_t>{2, 2, 0, 0}));
  EXPECT_EQ(leaf.res(0, 1), RatMatrix::identity(2));
  const Sheaf centre = skyscraper(s, 0, 1);
  EXPECT_EQ(centre.stalk_dims(), (std::vector<std::size_t>{1, 0, 0, 0}));
}

TEST(Sheaf, SimpleSheafNeedsASingletonCluster) {
  const SpacePtr s = share(indiscrete_space(2));
  EXPECT_THROW(simple_sheaf(s, 0, 1), Error);
  const SpacePtr t = share(sierpinski_space());
  EXPECT_EQ(simple_sheaf(t, t->index_of("b"), 1).stalk_dims(), (std::vector<std::size_t>{0, 1}));
}

TEST(Sheaf, SectionsOverOpens) {
  const SpacePtr s = share(star_space(3));
  const Sheaf cq = constant_sheaf(s, 1);
  EXPECT_EQ(sections(cq, s->all_points()).dim(), 1u);
  EXPECT_EQ(sections(cq, {1, 2}).dim(), 2u);
  EXPECT_THROW(sections(cq, {0}), Error);
}

TEST(Sheaf, RandomSheavesAreValidAndReproducible) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 100; ++t) {
    const SpacePtr s = share(random_space(rng, 6, 0.2));
    const Sheaf f = random_sheaf(s, 2, t);
    EXPECT_NO_THROW(f.validate());
    EXPECT_EQ(f, random_sheaf(s, 2, t));
  }
}

TEST(Sheaf, KernelAndCokernelAreExact) {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 40; ++t) {
    const SpacePtr s = share(random_space(rng, 5, 0.2));
    const SheafPtr a = share(random_sheaf(s, 2, 2 * t));
    const SheafPtr b = share(random_sheaf(s, 2, 2 * t + 1));
    const SheafMap f = random_morphism(a, b, rng);
    const SheafKernel k = kernel(f);
    const SheafCokernel c = cokernel(f);
    EXPECT_TRUE(k.inclusion.is_mono());
    EXPECT_TRUE(c.projection.is_epi());
    EXPECT_TRUE(compose(f, k.inclusion).is_zero());
    EXPECT_TRUE(compose(c.projection, f).is_zero());
    for (std::size_t x = 0; x < s->size(); ++x) {
      const std::size_t r = rank(f.comp(x));
      EXPECT_EQ(k.sheaf->stalk_dim(x), a->stalk_dim(x) - r);
      EXPECT_EQ(c.sheaf->stalk_dim(x), b->stalk_dim(x) - r);
    }
    EXPECT_NO_THROW(k.sheaf->validate());
    EXPECT_NO_THROW(c.sheaf->validate());
  }
}

TEST(Sheaf, HomIntoSkyscraperIsTheStalkAdjunction) {
  // Hom(A, ι_y(Q^d)) has dimension d * dim A_y.
  std::mt19937_64 rng(23);
  for (int t = 0; t < 60; ++t) {
    const SpacePtr s = share(random_space(rng, 5, 0.2));
    const SheafPtr a = share(random_sheaf(s, 2, t));
    const std::size_t y = t % s->size();
    const std::size_t d = 1 + t % 2;
    const HomSpace hom(a, share(skyscraper(s, y, d)));
    EXPECT_EQ(hom.dim(), d * a->stalk_dim(y));
  }
}

TEST(Sheaf, HomBasisMapsAreMorphisms) {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 30; ++t) {
    const SpacePtr s = share(random_space(rng, 5, 0.2));
    const SheafPtr a = share(random_sheaf(s, 2, t));
    const SheafPtr b = share(random_sheaf(s, 2, t + 100));
    const HomSpace hom(a, b);
    for (std::size_t k = 0; k < hom.dim(); ++k) {
      const SheafMap m = hom.basis_map(k);
      EXPECT_NO_THROW(m.validate());
      RatMatrix e(hom.dim(), 1);
      e.set(k, 0, Rational(1));
      EXPECT_EQ(hom.coordinates(hom.vectorize(m)), e);
    }
  }
}

TEST(Sheaf, ConstantSheafEndomorphismsCountComponents) {
  const SpacePtr s = share(disjoint_union(star_space(2), discrete_space(2)));
  const SheafPtr cq = share(constant_sheaf(s, 1));
  EXPECT_EQ(hom_sheaves(cq, cq).dim(), 3u);
}

TEST(Sheaf, NaturalityIsChecked) {
  const SpacePtr s = share(star_space(1));
  const SheafPtr cq = share(constant_sheaf(s, 1));
  std::vector<RatMatrix> comps{RatMatrix::identity(1), RatMatrix(1, 1)};
  EXPECT_THROW(SheafMap(cq, cq, comps), Error);
}

TEST(Sheaf, DirectSumStacksSummands) {
  const SpacePtr s = share(star_space(2));
  const std::vector<Sheaf> parts{constant_sheaf(s, 1), skyscraper(s, 1, 2)};
  const Sheaf sum = direct_sum(s, parts);
  EXPECT_EQ(sum.stalk_dims(), (std::vector<std::size_t>{3, 3, 1}));
  EXPECT_NO_THROW(sum.validate());
}
