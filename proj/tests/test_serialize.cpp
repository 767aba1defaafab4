#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "u1braid/serialize.hpp"

using namespace u1braid;

namespace {

template <class T>
T round_trip(const T& value) {
  return json::parse(json(value).dump()).get<T>();
}

}  // namespace

TEST(Json, Rationals) {
  EXPECT_EQ(rational_text(formlat::Rational(3, 4)), "3/4");
  EXPECT_EQ(rational_text(formlat::Rational(-6, 4)), "-3/2");
  EXPECT_EQ(rational_text(formlat::Rational(2)), "2");
  EXPECT_EQ(parse_rational("-3/2"), formlat::Rational(-3, 2));
  EXPECT_EQ(parse_rational("5"), formlat::Rational(5));
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_THROW(parse_rational("x"), InputError);
}

TEST(Json, Matrix) {
  EXPECT_EQ(round_trip(fixture::g87()), fixture::g87());
  EXPECT_EQ(json(fixture::g87()).dump(), "[[-6,1,1],[1,-3,1],[1,1,-2]]");
  EXPECT_THROW(json::parse("[[1, 2], [3]]").get<IntMatrix>(), InputError);
  EXPECT_THROW(json::parse("[[1.5]]").get<IntMatrix>(), InputError);
  EXPECT_THROW(json::parse("[]").get<IntMatrix>(), InputError);
}

TEST(Json, GoeritzInput) {
  EXPECT_EQ(goeritz::goeritz_input(json::parse("{\"goeritz\": [[-3]]}")), (IntMatrix{{-3}}));
  EXPECT_EQ(goeritz::goeritz_input(json::parse("[[-3]]")), (IntMatrix{{-3}}));
}

TEST(Json, Word) {
  const auto w = fixture::word(fixture::kWord87);
  const json j = w;
  EXPECT_EQ(j["letters"], json::parse("[[1,-4],[2,1],[1,-1],[2,2]]"));
  EXPECT_EQ(j["pairs"], json::parse("[[4,1],[1,2]]"));
  EXPECT_EQ(round_trip(w), w);
  EXPECT_EQ(json(fixture::kWord1079).get<braid::AltBraidWord>(), fixture::word(fixture::kWord1079));
  EXPECT_THROW(json("s1 s2").get<braid::AltBraidWord>(), InputError);
}

TEST(Json, DTable) {
  const formlat::DTable t = formlat::d_table_sharp(fixture::g87());
  EXPECT_EQ(round_trip(t), t);
  const json j = formlat::d_table_halfint_unknot(9);
  EXPECT_EQ(j["values"]["0"], "0");
  EXPECT_EQ(j["values"].size(), 9u);
  EXPECT_THROW(json::parse(R"({"modulus": 3, "values": {"0": "0"}})").get<formlat::DTable>(), InputError);
}

TEST(Json, Invariants) {
  const auto rec = goeritz::invariants(fixture::word(fixture::kWord1079));
  EXPECT_EQ(round_trip(rec), rec);
}

TEST(Json, UnknottingDiagram) {
  for (const auto& d : braid::enumerate_unknotting_words(6)) EXPECT_EQ(round_trip(d), d);
}

TEST(Json, BMatrix) {
  for (const auto& b : expandgen::generate_B0(4)) {
    const json j = b;
    EXPECT_EQ(j["roles"]["y_row"], b.r());
    EXPECT_EQ(j["vivj"], b.vivj());
    EXPECT_EQ(round_trip(b), b);
  }
}

TEST(Json, PipelineReports) {
  std::vector<embed::PipelineReport> reports{
      embed::u1_pipeline(fixture::word(fixture::kWord87)),
      embed::u1_pipeline(fixture::word(fixture::kWord1079)),
      embed::u1_pipeline(fixture::word(fixture::kWord1079), {false}),
      embed::u1_pipeline(braid::AltBraidWord({{1, 1}, {1, 1}})),
      embed::u1_pipeline(braid::AltBraidWord({{5, 1}})),
      embed::u1_pipeline_matrix(fixture::g87(), 2),
  };
  for (const auto& r : reports) {
    EXPECT_EQ(round_trip(r), r);
    const json j = r;
    EXPECT_EQ(j["verdict"], r.verdict());
    EXPECT_EQ(j["stage"], embed::to_string(r.stage));
  }
  EXPECT_THROW(embed::stage_from_string("nope"), InputError);
}
