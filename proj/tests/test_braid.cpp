#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "u1braid/braid.hpp"
#include "u1braid/goeritz.hpp"

using namespace u1braid;
using namespace u1braid::braid;

namespace {

RawBraidWord raw(std::vector<Letter> letters) { return RawBraidWord{std::move(letters)}; }

std::vector<ExponentPair> pairs_of(const char* text) {
  auto w = alt_canonical(parse_braid_word(text));
  return w ? w->pairs() : std::vector<ExponentPair>{};
}

}  // namespace

TEST(Parse, LettersAndExponents) {
  const RawBraidWord w = parse_braid_word("s1^-4 s2 s1^-1 s2^2");
  EXPECT_EQ(w.letters, (std::vector<Letter>{{1, -4}, {2, 1}, {1, -1}, {2, 2}}));
  EXPECT_EQ(to_text(w), "s1^-4 s2 s1^-1 s2^2");
  EXPECT_EQ(parse_braid_word("s1 s1^-1").letters.size(), 0u);
  EXPECT_THROW(parse_braid_word("s3"), BraidParseError);
  EXPECT_THROW(parse_braid_word("s1^x"), BraidParseError);
  EXPECT_THROW(parse_braid_word("t1"), BraidParseError);
}

TEST(Permutation, KnotsAndLinks) {
  EXPECT_TRUE(permutation_class(parse_braid_word("s1 s2")).is_three_cycle());
  EXPECT_TRUE(permutation_class(parse_braid_word(fixture::kWord87)).is_three_cycle());
  EXPECT_TRUE(permutation_class(parse_braid_word("s1^2")).is_identity());
}

TEST(AltCanonical, Examples) {
  EXPECT_EQ(pairs_of("s2^2 s1^-4 s2 s1^-1"), (std::vector<ExponentPair>{{4, 1}, {1, 2}}));
  EXPECT_TRUE(pairs_of("s1 s2").empty());
  EXPECT_EQ(pairs_of(fixture::kWord1079), (std::vector<ExponentPair>{{3, 2}, {2, 3}}));
  EXPECT_EQ(pairs_of(fixture::kWord87), (std::vector<ExponentPair>{{4, 1}, {1, 2}}));
}

TEST(AltCanonical, RotationInvariant) {
  for (const auto& w : enumerate_alt_words(9, false)) {
    const UnitWord u = expand_letters(w.raw());
    for (std::size_t s = 0; s < u.size(); ++s) {
      const auto again = alt_canonical(collect_letters(rotated(u, s)));
      ASSERT_TRUE(again);
      EXPECT_EQ(*again, w);
    }
  }
}

TEST(Reduce, WorkedCases) {
  const auto a = reduce_almost_alternating(raw({{1, -2}, {1, 1}, {2, 1}}));
  EXPECT_EQ(a.kase, ReductionCase::A);
  const auto a_alt = alt_canonical(a.residual);
  ASSERT_TRUE(a_alt);
  EXPECT_EQ(a_alt->pairs(), (std::vector<ExponentPair>{{1, 1}}));

  const auto c = reduce_almost_alternating(raw({{1, 1}, {2, 1}}));
  EXPECT_EQ(c.kase, ReductionCase::C);
  EXPECT_EQ(expand_letters(c.residual), (UnitWord{1, 2}));

  // By hand: s1^-2 (s2 s1 s2) = s1^-1 s2 s1, conjugate to s2.
  const auto f = reduce_almost_alternating(raw({{1, -2}, {2, 1}, {1, 1}, {2, 1}}));
  EXPECT_EQ(f.kase, ReductionCase::A);
  EXPECT_FALSE(f.trace.empty());
  EXPECT_EQ(expand_letters(f.residual), (UnitWord{2}));
}

TEST(Reduce, RejectsNonAlmostAlternating) {
  EXPECT_THROW(reduce_almost_alternating(parse_braid_word("s1^-1 s2")), InputError);
  EXPECT_THROW(reduce_almost_alternating(raw({{1, 1}, {2, 1}, {1, 1}, {2, 1}})), InputError);
}

TEST(UnknotTest, Examples) {
  EXPECT_TRUE(almost_alt_unknot_test(raw({{1, -1}, {1, 1}, {1, -1}, {2, 1}})));
  EXPECT_TRUE(almost_alt_unknot_test(raw({{1, -2}, {2, 1}, {1, 1}})));
  // s1 s2^3 closes to a trefoil.
  EXPECT_FALSE(almost_alt_unknot_test(raw({{1, 1}, {2, 3}})));
  EXPECT_FALSE(almost_alt_unknot_test(raw({{1, -1}, {2, 3}, {1, 1}, {2, 1}})));
  // Closes to a two-component link.
  EXPECT_THROW(almost_alt_unknot_test(raw({{1, -3}, {1, 1}, {2, 1}, {1, -1}, {2, 1}})), InputError);
}

TEST(UnknotTest, ChangedNotKnotIsRejected) {
  EXPECT_THROW(almost_alt_unknot_test(raw({{1, 1}, {2, 2}})), InputError);
}

// Every reduction terminates within 4 len^2 steps, case A leaves a word in
// s1^-1, s2 only, and case C leaves s1 s2^k with k <= 3.
TEST(Reduce, TerminationAndResidualShapes) {
  std::size_t b_seen = 0;
  for (const auto& w : enumerate_alt_words(11)) {
    for (const auto& c : all_crossings(w)) {
      UnitWord u = changed_word(w, c);
      if (!is_almost_alternating(u)) u = swap_letters(u);
      ASSERT_TRUE(is_almost_alternating(u));
      const auto out = reduce_almost_alternating(collect_letters(u));
      EXPECT_LE(out.trace.size(), 4 * u.size() * u.size());
      const UnitWord res = expand_letters(out.residual);
      switch (out.kase) {
        case ReductionCase::A:
          for (int x : res) EXPECT_TRUE(x == -1 || x == 2) << to_text(w);
          break;
        case ReductionCase::C: {
          const std::set<UnitWord> allowed{{1, 2}, {1, 2, 2}, {1, 2, 2, 2}};
          EXPECT_TRUE(allowed.count(res)) << to_text(w);
          break;
        }
        case ReductionCase::B:
          EXPECT_TRUE(out.h_factor);
          ++b_seen;
          break;
      }
    }
  }
  EXPECT_GT(b_seen, 0u);
}

TEST(Enumerate, SmallestBoundHasSeed) {
  const auto ds = enumerate_unknotting_words(2);
  ASSERT_FALSE(ds.empty());
  EXPECT_EQ(ds.front().word.pairs(), (std::vector<ExponentPair>{{1, 1}}));
}

// Brute force: change every crossing of every word and run the unknot test.
// The unknotting family, the test and the determinant-one condition agree.
TEST(Enumerate, MatchesCrossingChangeBruteForce) {
  const Int bound = 10;
  std::set<std::pair<AltBraidWord, CrossingRef>> family;
  for (const auto& d : enumerate_unknotting_words(bound))
    for (const auto& c : d.crossings) family.insert({d.word, c});
  std::set<std::pair<AltBraidWord, CrossingRef>> brute;
  for (const auto& w : enumerate_alt_words(bound))
    for (const auto& c : all_crossings(w)) {
      const bool unknot = almost_alt_unknot_test(changed_raw(w, c));
      const bool det1 = std::abs(determinant(goeritz::changed_goeritz(w, c))) == 1;
      EXPECT_EQ(unknot, det1) << to_text(w);
      if (unknot) brute.insert({w, c});
    }
  EXPECT_EQ(family, brute);
  EXPECT_FALSE(brute.empty());
}

TEST(Enumerate, AltWordsAreCanonicalKnots) {
  const auto ws = enumerate_alt_words(8);
  for (const auto& w : ws) {
    EXPECT_LE(w.crossings(), 8);
    EXPECT_TRUE(permutation_class(w.raw()).is_three_cycle());
    EXPECT_EQ(*alt_canonical(w.raw()), w);
  }
  EXPECT_TRUE(std::is_sorted(ws.begin(), ws.end()));
}

TEST(CrossingRef, RangeChecked) {
  const auto w = fixture::word(fixture::kWord87);
  EXPECT_EQ(all_crossings(w).size(), 8u);
  EXPECT_THROW(check_crossing(w, {0, 4}), InputError);
  EXPECT_THROW(check_crossing(w, {4, 0}), InputError);
}
