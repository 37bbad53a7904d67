#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "cbsheaf/error.hpp"
#include "cbsheaf/json_io.hpp"
#include "generators.hpp"

using namespace cbsheaf;
using namespace cbsheaf::testkit;

namespace {

SpacePtr share(FiniteSpace s) { return std::make_shared<const FiniteSpace>(std::move(s)); }

std::filesystem::path data(const char* name) { return std::filesystem::path(CBSHEAF_DATA_DIR) / name; }

}  // namespace

TEST(JsonIo, ReadsBothSpaceForms) {
  const FiniteSpace star = space_from_json(read_json_file(data("star.json")));
  EXPECT_EQ(star, star_space(3));
  const FiniteSpace pair = space_from_json(read_json_file(data("indiscrete2.json")));
  EXPECT_EQ(pair, indiscrete_space(2));
}

TEST(JsonIo, SpaceWriterSortsPoints) {
  const json j = space_to_json(FiniteSpace::from_min_nbhds({"z", "a"}, {{"z", "a"}, {"a"}}));
  EXPECT_EQ(j.at("points"), json({"a", "z"}));
  EXPECT_EQ(j.at("min_nbhd").at("z"), json({"a", "z"}));
}

TEST(JsonIo, SpaceRoundTrip) {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 50; ++t) {
    const FiniteSpace s = random_space(rng, 6, 0.2);
    const FiniteSpace back = space_from_json(space_to_json(s));
    EXPECT_EQ(cb_filtration(back).rank(), cb_filtration(s).rank());
    EXPECT_EQ(space_to_json(back), space_to_json(s));
  }
}

TEST(JsonIo, RejectsBadSpaces) {
  EXPECT_THROW(space_from_json(json::parse(R"({"points": ["a"]})")), Error);
  EXPECT_THROW(space_from_json(json::parse(R"({"points": ["a"], "min_nbhd": {"b": ["b"]}})")), Error);
  EXPECT_THROW(space_from_json(json::parse(R"({"points": ["a","b"], "opens": [[], ["a"], ["b"]]})")), Error);
}

TEST(JsonIo, SheafRoundTrip) {
  std::mt19937_64 rng(62);
  for (int t = 0; t < 50; ++t) {
    const SpacePtr s = share(random_space(rng, 5, 0.2));
    const Sheaf f = random_sheaf(s, 3, t);
    EXPECT_EQ(sheaf_from_json(sheaf_to_json(f), s), f);
  }
}

TEST(JsonIo, ReadsSheafFile) {
  const SpacePtr s = share(space_from_json(read_json_file(data("star.json"))));
  const Sheaf f = sheaf_from_json(read_json_file(data("star_twisted.json")), s);
  EXPECT_EQ(f.stalk_dim(0), 2u);
  EXPECT_EQ(f.res(0, 3).at(0, 1), Rational(-1, 2));
}

TEST(JsonIo, RejectsBadSheaves) {
  const SpacePtr s = share(star_space(1));
  EXPECT_THROW(sheaf_from_json(json::parse(R"({"stalk_dims": {"q": 1}})"), s), Error);
  EXPECT_THROW(sheaf_from_json(json::parse(R"({"stalk_dims": {"c": 1, "l1": 1}, "res": {"l1->c": [["1"]]}})"), s),
               Error);
  EXPECT_THROW(sheaf_from_json(json::parse(R"({"stalk_dims": {"c": 1, "l1": 1}, "res": {"c->l1": [["1", "2"]]}})"), s),
               Error);
  EXPECT_THROW(sheaf_from_json(json::parse(R"({"stalk_dims": {"c": 1}, "res": {"c->c": [["2"]]}})"), s), Error);
}

TEST(JsonIo, ExtReportShape) {
  ExtReport rep;
  rep.ext_dims = {{0, 0}, {1, 2}};
  rep.terminated = true;
  rep.resolution_length = 2;
  DimensionVerdict v;
  v.kind = VerdictKind::exact;
  v.lower = 1;
  v.upper = 1;
  const json j = ext_report_to_json("c", "constant", rep, v);
  EXPECT_EQ(j.at("point"), "c");
  EXPECT_EQ(j.at("ext_dims").at("1"), 2);
  EXPECT_EQ(j.at("verdict").at("kind"), "exact");
  EXPECT_EQ(j.at("verdict").at("value"), 1);
  EXPECT_TRUE(j.at("verdict").at("citation").is_null());
}

TEST(JsonIo, ResolutionDump) {
  const SpacePtr s = share(star_space(2));
  const GodementResolution r = build_resolution(std::make_shared<const Sheaf>(constant_sheaf(s, 1)), 4);
  const json j = resolution_to_json(r);
  EXPECT_EQ(j.at("terminated"), true);
  EXPECT_EQ(j.at("terms").size(), 2u);
  EXPECT_EQ(j.at("terms")[0].at("stalk_dims").at("c"), 3);
  EXPECT_EQ(j.at("terms")[0].at("delta").at("c"), json({{"1"}, {"1"}, {"1"}}));
}

TEST(JsonIo, SummaryUsesOmegaString) {
  EXPECT_EQ(summary_to_json(cb_summary(*parse_expr("E"))).at("rank"), "omega");
}
