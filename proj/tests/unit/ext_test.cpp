#include <gtest/gtest.h>

#include <random>

#include "cbsheaf/error.hpp"
#include "cbsheaf/ext.hpp"
#include "generators.hpp"

using namespace cbsheaf;
using namespace cbsheaf::testkit;

namespace {

SpacePtr share(FiniteSpace s) { return std::make_shared<const FiniteSpace>(std::move(s)); }
SheafPtr share(Sheaf f) { return std::make_shared<const Sheaf>(std::move(f)); }

GodementResolution resolve(const SheafPtr& f) { return build_resolution(f, default_max_len(f->base())); }

}  // namespace

TEST(Ext, HomDegreesOnTheStar) {
  const SpacePtr s = share(star_space(3));
  const GodementResolution r = resolve(share(constant_sheaf(s, 1)));
  EXPECT_EQ(hom_into_resolution(s->index_of("c"), r).degrees, (std::vector<std::size_t>{1, 3}));
  // ι_{l1} is nonzero at l1 and at c, so it sees C⁰ at both and C¹ at c.
  EXPECT_EQ(hom_into_resolution(s->index_of("l1"), r).degrees, (std::vector<std::size_t>{2, 3}));
}

TEST(Ext, DiscreteSpaceHasOneTerm) {
  const SpacePtr s = share(discrete_space(3));
  const GodementResolution r = resolve(share(random_sheaf(s, 3, 4)));
  for (std::size_t x = 0; x < 3; ++x) {
    const ExtComplex c = hom_into_resolution(x, r);
    EXPECT_EQ(c.degrees, (std::vector<std::size_t>{r.source->stalk_dim(x)}));
  }
}

TEST(Ext, StarExtGroups) {
  for (std::size_t b = 2; b <= 6; ++b) {
    const SpacePtr s = share(star_space(b));
    const ExtReport rep = ext_groups(share(constant_sheaf(s, 1)), 0, 3);
    EXPECT_EQ(rep.ext_dims.at(0), 0u);
    EXPECT_EQ(rep.ext_dims.at(1), b - 1);
    EXPECT_EQ(rep.ext_dims.at(2), 0u);
    EXPECT_EQ(rep.ext_dims.at(3), 0u);
    EXPECT_EQ(rep.top_degree(), 1u);
  }
}

TEST(Ext, IsolatedClosedPointsHaveNoHigherExt) {
  const SpacePtr s = share(disjoint_union(star_space(2), discrete_space(2)));
  const std::size_t x = s->index_of("p1");
  const ExtReport rep = ext_groups(share(constant_sheaf(s, 1)), x, 3);
  EXPECT_EQ(rep.ext_dims.at(0), 1u);
  for (std::size_t k = 1; k <= 3; ++k) EXPECT_EQ(rep.ext_dims.at(k), 0u);
}

TEST(Ext, AlphasComposeToZero) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 40; ++t) {
    const SpacePtr s = share(random_space(rng, 5, 0.2));
    const GodementResolution r = resolve(share(random_sheaf(s, 2, t)));
    for (const auto& test : test_family(s)) {
      const ExtComplex c = ext_complex(test.sheaf, r);
      for (std::size_t k = 0; k + 1 < c.alphas.size(); ++k) {
        EXPECT_TRUE((c.alphas[k + 1] * c.alphas[k]).is_zero());
      }
    }
  }
}

TEST(Ext, VanishesFromTheRankOn) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 40; ++t) {
    const SpacePtr s = share(random_space(rng, 5, 0.0));
    const std::size_t n = cb_rank(*s);
    const SheafPtr f = share(random_sheaf(s, 2, t));
    const GodementResolution r = build_resolution(f, n + 3);
    for (const auto& test : test_family(s)) {
      const ExtReport rep = ext_groups(ext_complex(test.sheaf, r), n + 2);
      for (std::size_t k = n; k <= n + 2; ++k) EXPECT_EQ(rep.ext_dims.at(k), 0u) << test.name;
    }
  }
}

TEST(Ext, TruncatedResolutionsRefuseToExtrapolate) {
  const SpacePtr s = share(indiscrete_space(2));
  const GodementResolution r = build_resolution(share(constant_sheaf(s, 1)), 4);
  const ExtComplex c = hom_into_resolution(0, r);
  EXPECT_EQ(available_degrees(c), 3u);
  EXPECT_NO_THROW(ext_groups(c, 2));
  EXPECT_THROW(ext_groups(c, 3), Error);
  EXPECT_EQ(ext_groups(c).ext_dims.size(), 3u);
}

TEST(Ext, SheafDimensionBounds) {
  const SpacePtr star = share(star_space(3));
  const DimensionVerdict v = injective_dimension_bounds(share(constant_sheaf(star, 1)));
  EXPECT_EQ(v.exact(), 1u);

  std::mt19937_64 rng(43);
  const SpacePtr disc = share(discrete_space(3));
  for (int t = 0; t < 5; ++t) {
    EXPECT_EQ(injective_dimension_bounds(share(random_sheaf(disc, 3, t))).exact(), 0u);
  }
  const SpacePtr p = share(product(star_space(2), star_space(2)));
  EXPECT_EQ(injective_dimension_bounds(share(constant_sheaf(p, 1))).exact(), 2u);
  EXPECT_EQ(injective_dimension_bounds(share(zero_sheaf(star))).exact(), 0u);
}

TEST(Ext, NonTerminatingSheafHasNoUpperBound) {
  const SpacePtr s = share(indiscrete_space(2));
  const DimensionVerdict v = injective_dimension_bounds(share(constant_sheaf(s, 1)));
  EXPECT_EQ(v.kind, VerdictKind::bounds);
  EXPECT_FALSE(v.upper.has_value());
}

TEST(Ext, CategoryDimensions) {
  EXPECT_EQ(category_dimension(share(empty_space())).kind, VerdictKind::trivial_category);

  const DimensionVerdict star = category_dimension(share(star_space(3)));
  EXPECT_EQ(star.exact(), 1u);
  ASSERT_TRUE(star.witness.has_value());
  EXPECT_EQ(star.witness->sheaf, "constant");
  EXPECT_EQ(star.witness->test_object, "skyscraper:c");

  // The constant sheaf on the Sierpiński space is injective, but its Godement
  // resolution has two terms, so only bounds are reported. A simple sheaf
  // realises the category bound instead.
  const SpacePtr sp = share(sierpinski_space());
  const DimensionVerdict cq = injective_dimension_bounds(share(constant_sheaf(sp, 1)));
  EXPECT_EQ(cq.kind, VerdictKind::bounds);
  EXPECT_EQ(cq.lower, 0u);
  EXPECT_EQ(cq.upper, 1u);
  const DimensionVerdict sier = category_dimension(sp);
  EXPECT_EQ(sier.exact(), 1u);
  ASSERT_TRUE(sier.witness.has_value());
  EXPECT_EQ(sier.witness->sheaf, "simple:a");

  EXPECT_EQ(category_dimension(share(discrete_space(4))).exact(), 0u);
}

TEST(Ext, NonScatteredCategoryGivesBoundsOnly) {
  const DimensionVerdict v = category_dimension(share(disjoint_union(star_space(2), indiscrete_space(2))));
  EXPECT_EQ(v.kind, VerdictKind::bounds);
  EXPECT_FALSE(v.upper.has_value());
  EXPECT_EQ(v.lower, 1u);
  EXPECT_NE(v.provenance.find("Conject"), std::string::npos);
}

TEST(Ext, MoreTestSheavesNeverLowerTheBound) {
  std::mt19937_64 rng(44);
  for (int t = 0; t < 15; ++t) {
    const SpacePtr s = share(random_space(rng, 5, 0.0));
    DimensionOptions few;
    DimensionOptions many;
    many.random_sheaves = 3;
    many.seed = t;
    const DimensionVerdict a = category_dimension(s, few);
    const DimensionVerdict b = category_dimension(s, many);
    EXPECT_LE(a.lower, b.lower);
    if (a.exact()) EXPECT_EQ(b.exact(), a.exact());
  }
}

TEST(Ext, HomologycharOnTheStar) {
  const SpacePtr s = share(star_space(3));
  const GodementResolution r = resolve(share(constant_sheaf(s, 1)));
  const HomologycharReport rep = homologychar_check(r, 0);
  EXPECT_TRUE(rep.ok);
  ASSERT_EQ(rep.degrees.size(), 2u);
  EXPECT_EQ(rep.degrees[1].hom_dim, 3u);
  EXPECT_EQ(rep.degrees[1].factor_dim, 3u);
  EXPECT_EQ(rep.degrees[0].alpha_matches, true);
  EXPECT_FALSE(rep.degrees[1].alpha_matches.has_value());
  EXPECT_THROW(homologychar_check(r, 1), Error);
}

TEST(Ext, HomologycharOnProductsOfStars) {
  const SpacePtr s = share(product(star_space(2), star_space(2)));
  const GodementResolution r = resolve(share(constant_sheaf(s, 1)));
  for (std::size_t x = 0; x < s->size(); ++x) {
    if (s->is_closed_point(x)) EXPECT_TRUE(homologychar_check(r, x).ok) << s->name(x);
  }
}
