#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "fixtures.hpp"
#include "u1braid/embed.hpp"
#include "u1braid/formlat.hpp"
#include "u1braid/pretzel.hpp"

using namespace u1braid;
using namespace u1braid::embed;

namespace {

// All k x N matrices with -B B^T = m, by plain enumeration of rows.
std::set<IntMatrix> embed_bruteforce(const IntMatrix& m, std::size_t n) {
  const std::size_t k = m.rows();
  std::vector<std::vector<std::vector<Int>>> candidates(k);
  for (std::size_t i = 0; i < k; ++i) {
    const Int norm = -m(i, i);
    const auto bound = static_cast<Int>(std::sqrt(static_cast<double>(norm)));
    std::vector<Int> v(n);
    auto rec = [&](auto&& self, std::size_t j, Int left) -> void {
      if (j == n) {
        if (left == 0) candidates[i].push_back(v);
        return;
      }
      for (Int x = -bound; x <= bound; ++x) {
        if (x * x > left) continue;
        v[j] = x;
        self(self, j + 1, left - x * x);
      }
    };
    rec(rec, 0, norm);
  }
  std::set<IntMatrix> out;
  IntMatrix b(k, n);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == k) {
      out.insert(canonical_signed_columns(b));
      return;
    }
    for (const auto& v : candidates[i]) {
      std::copy(v.begin(), v.end(), b.row(i).begin());
      bool ok = true;
      for (std::size_t p = 0; p < i && ok; ++p) ok = -dot(b.row(p), b.row(i)) == m(p, i);
      if (ok) self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

void expect_witness_invariants(const PipelineReport& rep, const goeritz::GoeritzForm& g) {
  for (const auto& w : rep.witnesses) {
    const std::size_t r = g.rank();
    EXPECT_EQ(-gram(w.matrix), direct_sum(g.matrix, formlat::rn_form(rep.n)));
    EXPECT_EQ(std::abs(determinant(w.matrix.submatrix(0, 2, r, r))), 1);
    EXPECT_EQ(std::abs(determinant(w.matrix)), rep.determinant);
    std::size_t marked = 0;
    for (std::size_t i = 0; i < r; ++i) marked += w.matrix(i, 0) != 0 || w.matrix(i, 1) != 0;
    if (w.sigma_case == 2) {
      EXPECT_EQ(marked, 1u);
    } else {
      ASSERT_EQ(w.marked_rows.size(), 2u);
      EXPECT_EQ(marked, 2u);
      const auto i = w.marked_rows[0], j = w.marked_rows[1];
      EXPECT_EQ(w.matrix(i, 0), -w.matrix(j, 0));
      EXPECT_EQ(w.matrix(i, 1), -w.matrix(j, 1));
    }
    ASSERT_TRUE(w.crossing);
    EXPECT_TRUE(w.verified);
    EXPECT_TRUE(verify_unknotting(*w.diagram, *w.crossing));
  }
}

}  // namespace

TEST(EmbedForm, Examples) {
  const IntMatrix m = pretzel::plumbing_form();
  EXPECT_EQ(embed_form(m, 5).size(), 1u);
  const auto six = embed_form(m, 6);
  ASSERT_EQ(six.size(), 2u);
  const std::set<IntMatrix> expected{canonical_signed_columns(pretzel::embedding_a1(6)),
                                     canonical_signed_columns(pretzel::embedding_a2(6))};
  EXPECT_EQ(std::set<IntMatrix>(six.begin(), six.end()), expected);
  EXPECT_EQ(embed_form(IntMatrix{{-1}}, 1), (std::vector<IntMatrix>{IntMatrix{{1}}}));
  EXPECT_TRUE(embed_form(IntMatrix{{-1}}, 0).empty());
}

TEST(EmbedForm, MatchesBruteForce) {
  const std::vector<std::pair<IntMatrix, std::size_t>> cases{
      {IntMatrix{{-3}}, 3},          {formlat::rn_form(2), 3}, {formlat::rn_form(3), 4},
      {IntMatrix{{-2, 1}, {1, -2}}, 3}, {fixture::g87(), 4},     {IntMatrix{{-2, 1, 0}, {1, -2, 1}, {0, 1, -2}}, 4}};
  for (const auto& [m, n] : cases) {
    const auto got = embed_form(m, n);
    EXPECT_EQ(std::set<IntMatrix>(got.begin(), got.end()), embed_bruteforce(m, n)) << m;
  }
}

TEST(EmbedForm, CanonicalFormsAreFixedPoints) {
  for (std::size_t n = 5; n <= 7; ++n)
    for (const auto& a : embed_form(pretzel::plumbing_form(), n)) EXPECT_EQ(canonical_signed_columns(a), a);
}

TEST(ChangeMaking, Examples) {
  EXPECT_TRUE(change_making_ok({1, 1, 3}));
  EXPECT_FALSE(change_making_ok({2, 2, 2, 3, 3}));
  EXPECT_TRUE(change_making_ok({}));
  EXPECT_TRUE(change_making_ok({0, 1, 1, 1, 3}));
  EXPECT_TRUE(change_making_ok({3, 1, 1}));
}

TEST(Criterion, EightSeven) {
  const auto found = criterion_search(fixture::g87(), 12);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found.front(), fixture::criterion_class(fixture::a87(), fixture::g87()));
}

TEST(Criterion, TenSeventyNine) {
  EXPECT_TRUE(criterion_search(fixture::g1079(), 31).empty());
  const auto relaxed = criterion_search(fixture::g1079(), 31, {false});
  ASSERT_EQ(relaxed.size(), 1u);
  EXPECT_EQ(relaxed.front(), fixture::criterion_class(fixture::a1079(), fixture::g1079()));
  // The corrected fixture satisfies the lattice constraints exactly.
  EXPECT_EQ(gram(fixture::a1079()), criterion_target(fixture::g1079(), 31));
  EXPECT_EQ(gram(fixture::a87()), criterion_target(fixture::g87(), 12));
}

TEST(Criterion, TrefoilAndErrors) {
  EXPECT_FALSE(criterion_search(IntMatrix{{-3}}, 2).empty());
  EXPECT_THROW(criterion_search(fixture::g87(), 11), InputError);
  EXPECT_THROW(criterion_search(IntMatrix{{1}}, 1), InputError);
}

TEST(Criterion, WorkersDoNotChangeResult) {
  EXPECT_EQ(criterion_search(fixture::g1079(), 31, {false, 0, 4}), criterion_search(fixture::g1079(), 31, {false}));
}

TEST(Normalize, SigmaTwo) {
  const IntMatrix n = normalize_sigma2(fixture::a87());
  IntMatrix expected = fixture::a87();
  expected.negate_col(4);
  EXPECT_EQ(n, expected);
  EXPECT_EQ(normalize_sigma2(n), n);
  EXPECT_EQ(marked_row_sigma2(n), 1u);
}

TEST(Normalize, SigmaTwoExtraction) {
  const auto g = goeritz::goeritz_3braid(fixture::word(fixture::kWord87));
  const IntMatrix n = normalize_sigma2(fixture::a87());
  const CrossingRef c = extract_crossing_sigma2(n, g);
  EXPECT_EQ(c.letter_index, 2u);  // the sigma1^{-1} block
  EXPECT_LT(g.matrix(1, 1), -2);
  EXPECT_TRUE(verify_unknotting(*g.word, c, &n));
}

TEST(Normalize, TwoMarkedRowsRejected) {
  IntMatrix bad = normalize_sigma2(fixture::a87());
  bad(0, 0) = 1;
  bad(0, 1) = 1;
  EXPECT_THROW(marked_row_sigma2(bad), InputError);
}

TEST(Normalize, SigmaZeroFigureEight) {
  const braid::AltBraidWord w({{1, 1}, {1, 1}});
  const auto g = goeritz::goeritz_3braid(w);
  const auto found = criterion_search(g, 3);
  ASSERT_FALSE(found.empty());
  for (const auto& a : found) {
    const auto marks = normalize_sigma0(a);
    EXPECT_EQ(g.matrix(marks.i, marks.j), 2);  // allowed only because r = 2
    const CrossingRef c = normalize_sigma0_and_extract(a, g);
    EXPECT_EQ(c.letter_index % 2, 1u);
    EXPECT_TRUE(verify_unknotting(w, c));
  }
}

TEST(Normalize, SigmaZeroOrthogonalRowsRejected) {
  const auto g = goeritz::goeritz_3braid(fixture::word(fixture::kWord1079));
  const auto marks = normalize_sigma0(fixture::a1079());
  EXPECT_EQ(g.matrix(marks.i, marks.j), 0);
  EXPECT_THROW(normalize_sigma0_and_extract(fixture::a1079(), g), TheoremViolation);
}

TEST(Verify, Examples) {
  const auto w = fixture::word(fixture::kWord87);
  EXPECT_TRUE(verify_unknotting(w, {2, 0}));
  for (std::size_t s = 0; s < 4; ++s) EXPECT_FALSE(verify_unknotting(w, {0, s}));
  const braid::AltBraidWord trefoil({{3, 1}});
  EXPECT_EQ(goeritz::goeritz_3braid(trefoil).matrix, (IntMatrix{{-3}}));
  EXPECT_TRUE(verify_unknotting(trefoil, {0, 0}));
  EXPECT_THROW(verify_unknotting(w, {9, 0}), InputError);
}

TEST(Pipeline, EightSeven) {
  const auto w = fixture::word(fixture::kWord87);
  const auto rep = u1_pipeline(w);
  EXPECT_EQ(rep.determinant, 23);
  EXPECT_EQ(rep.sigma, 2);
  EXPECT_EQ(rep.n, 12);
  EXPECT_EQ(rep.epsilon, -1);
  EXPECT_EQ(rep.stage, Stage::witness);
  EXPECT_EQ(rep.verdict(), "witness");
  ASSERT_EQ(rep.witnesses.size(), 1u);
  expect_witness_invariants(rep, goeritz::goeritz_3braid(w));
  EXPECT_EQ(fixture::criterion_class(rep.witnesses.front().matrix, fixture::g87()),
            fixture::criterion_class(fixture::a87(), fixture::g87()));
}

TEST(Pipeline, TenSeventyNine) {
  const auto w = fixture::word(fixture::kWord1079);
  const auto rep = u1_pipeline(w);
  EXPECT_EQ(rep.stage, Stage::change_making);
  EXPECT_EQ(rep.verdict(), "obstructed");
  EXPECT_EQ(rep.epsilon, 1);
  const auto relaxed = u1_pipeline(w, {false});
  ASSERT_EQ(relaxed.witnesses.size(), 1u);
  EXPECT_FALSE(relaxed.witnesses.front().crossing);
  EXPECT_EQ(relaxed.verdict(), "unverified");
  EXPECT_EQ(fixture::criterion_class(relaxed.witnesses.front().matrix, fixture::g1079()),
            fixture::criterion_class(fixture::a1079(), fixture::g1079()));
}

TEST(Pipeline, SignatureBound) {
  const auto rep = u1_pipeline(braid::AltBraidWord({{5, 1}}));
  EXPECT_EQ(std::abs(rep.sigma), 4);
  EXPECT_EQ(rep.stage, Stage::sigma_bound);
  EXPECT_EQ(rep.verdict(), "obstructed");
  EXPECT_THROW(u1_pipeline(braid::AltBraidWord({{1, 1}})), InputError);
}

TEST(Pipeline, MatrixInput) {
  const auto rep = u1_pipeline_matrix(fixture::g87(), 2);
  EXPECT_EQ(rep.stage, Stage::witness);
  ASSERT_EQ(rep.witnesses.size(), 1u);
  EXPECT_FALSE(rep.witnesses.front().crossing);
  EXPECT_EQ(u1_pipeline_matrix(fixture::g1079(), 0).stage, Stage::change_making);
  EXPECT_THROW(u1_pipeline_matrix(fixture::g87(), -2), InputError);
  EXPECT_THROW(u1_pipeline_matrix(IntMatrix{{-2}}, 0), InputError);
}

// Every witness at desk scale satisfies the lattice identities and certifies
// a crossing that really unknots.
TEST(Pipeline, WitnessInvariantsToTen) {
  std::size_t witnesses = 0;
  for (const auto& w : braid::enumerate_alt_words(10)) {
    if (goeritz::invariants(w).determinant == 1) continue;
    const auto rep = u1_pipeline(w);
    EXPECT_EQ(rep.epsilon, std::abs(rep.sigma) > 2 ? 0 : ((rep.sigma / 2) % 2 == 0 ? 1 : -1));
    for (const auto& wit : rep.witnesses) {
      PipelineReport one = rep;
      one.witnesses = {wit};
      expect_witness_invariants(one, goeritz::goeritz_3braid(*wit.diagram));
      ++witnesses;
    }
  }
  EXPECT_GT(witnesses, 0u);
}

TEST(Enumeration, NoDisagreementsToTen) {
  std::size_t unknotting = 0;
  for (const auto& row : enumerate_main(10, {true, 2})) {
    EXPECT_TRUE(row.agrees()) << braid::to_text(row.word);
    unknotting += !row.family_crossings.empty();
  }
  EXPECT_GT(unknotting, 0u);
}
