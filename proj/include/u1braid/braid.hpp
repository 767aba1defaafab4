#pragma once

// 3-braid words: parsing, closure permutation, alternating normal form,
// the almost-alternating rewriting system and the unknotting-word generator.

#include <array>
#include <charconv>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "u1braid/core.hpp"

namespace u1braid::braid {

struct Letter {
  int generator = 1;  // 1 or 2
  Int exponent = 1;   // nonzero
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

// Interpreted cyclically. The empty word is the identity.
struct RawBraidWord {
  std::vector<Letter> letters;
  bool is_identity() const { return letters.empty(); }
  friend auto operator<=>(const RawBraidWord&, const RawBraidWord&) = default;
};

struct BraidParseError : InputError {
  using InputError::InputError;
};

// Linear merge of neighbouring letters on the same generator; zero exponents
// vanish and may trigger further merges.
inline RawBraidWord merged(const std::vector<Letter>& letters) {
  RawBraidWord out;
  for (const Letter& l : letters) {
    if (l.generator != 1 && l.generator != 2) throw BraidParseError("generator out of range");
    if (l.exponent == 0) continue;
    if (!out.letters.empty() && out.letters.back().generator == l.generator) {
      out.letters.back().exponent += l.exponent;
      if (out.letters.back().exponent == 0) out.letters.pop_back();
    } else {
      out.letters.push_back(l);
    }
  }
  return out;
}

inline RawBraidWord parse_braid_word(std::string_view text) {
  std::vector<Letter> letters;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok.size() < 2 || (tok[0] != 's' && tok[0] != 'S'))
      throw BraidParseError("unrecognised token '" + tok + "'");
    const auto caret = tok.find('^');
    const std::string gen = tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
    if (gen != "1" && gen != "2") throw BraidParseError("unknown generator in '" + tok + "'");
    Int e = 1;
    if (caret != std::string::npos) {
      std::string_view ex = std::string_view(tok).substr(caret + 1);
      if (!ex.empty() && ex.front() == '+') ex.remove_prefix(1);
      const auto [ptr, ec] = std::from_chars(ex.data(), ex.data() + ex.size(), e);
      if (ex.empty() || ec != std::errc() || ptr != ex.data() + ex.size())
        throw BraidParseError("malformed exponent in '" + tok + "'");
    }
    letters.push_back({gen == "1" ? 1 : 2, e});
  }
  return merged(letters);
}

inline std::string to_text(const RawBraidWord& w) {
  if (w.is_identity()) return "1";
  std::string s;
  for (const Letter& l : w.letters) {
    if (!s.empty()) s += ' ';
    s += "s" + std::to_string(l.generator);
    if (l.exponent != 1) s += "^" + std::to_string(l.exponent);
  }
  return s;
}

// image[k] is the final position of the strand starting at position k.
struct Permutation3 {
  std::array<int, 3> image{0, 1, 2};
  bool is_identity() const { return image == std::array<int, 3>{0, 1, 2}; }
  bool is_three_cycle() const { return image[0] != 0 && image[1] != 1 && image[2] != 2; }
  friend bool operator==(const Permutation3&, const Permutation3&) = default;
};

inline Permutation3 permutation_class(const RawBraidWord& w) {
  std::array<int, 3> at{0, 1, 2};  // at[p] = strand currently at position p
  for (const Letter& l : w.letters) {
    if (std::abs(l.exponent) % 2 == 0) continue;
    const int p = l.generator - 1;
    std::swap(at[p], at[p + 1]);
  }
  Permutation3 perm;
  for (int p = 0; p < 3; ++p) perm.image[at[p]] = p;
  return perm;
}

struct ExponentPair {
  Int a = 1;
  Int b = 1;
  friend auto operator<=>(const ExponentPair&, const ExponentPair&) = default;
};

// Rotations attaining the lexicographically largest pair sequence.
inline std::vector<std::size_t> canonical_rotations(const std::vector<ExponentPair>& pairs) {
  const std::size_t m = pairs.size();
  auto rotated_less = [&](std::size_t s, std::size_t t) {
    for (std::size_t k = 0; k < m; ++k) {
      const auto& x = pairs[(s + k) % m];
      const auto& y = pairs[(t + k) % m];
      if (x != y) return x < y;
    }
    return false;
  };
  std::vector<std::size_t> best{0};
  for (std::size_t s = 1; s < m; ++s) {
    if (rotated_less(best.front(), s))
      best.assign(1, s);
    else if (!rotated_less(s, best.front()))
      best.push_back(s);
  }
  return best;
}

// Cyclic word sigma1^{-a_1} sigma2^{b_1} ... sigma1^{-a_m} sigma2^{b_m}, stored in
// canonical rotation.
class AltBraidWord {
 public:
  explicit AltBraidWord(std::vector<ExponentPair> pairs) {
    if (pairs.empty()) throw InputError("alternating word needs at least one pair");
    for (const auto& p : pairs)
      if (p.a < 1 || p.b < 1) throw InputError("alternating word exponents must be positive");
    const std::size_t s = canonical_rotations(pairs).front();
    pairs_.reserve(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) pairs_.push_back(pairs[(s + k) % pairs.size()]);
  }

  const std::vector<ExponentPair>& pairs() const { return pairs_; }
  std::size_t m() const { return pairs_.size(); }
  std::size_t letter_count() const { return 2 * pairs_.size(); }

  Int sum_a() const {
    Int s = 0;
    for (const auto& p : pairs_) s += p.a;
    return s;
  }
  Int sum_b() const {
    Int s = 0;
    for (const auto& p : pairs_) s += p.b;
    return s;
  }
  Int crossings() const { return sum_a() + sum_b(); }

  // Exponent of letter 2l (sigma1 block) or 2l+1 (sigma2 block).
  Int block_size(std::size_t letter_index) const {
    const auto& p = pairs_.at(letter_index / 2);
    return letter_index % 2 == 0 ? p.a : p.b;
  }

  RawBraidWord raw() const {
    RawBraidWord w;
    for (const auto& p : pairs_) {
      w.letters.push_back({1, -p.a});
      w.letters.push_back({2, p.b});
    }
    return w;
  }

  friend auto operator<=>(const AltBraidWord&, const AltBraidWord&) = default;

 private:
  std::vector<ExponentPair> pairs_;
};

inline std::string to_text(const AltBraidWord& w) { return to_text(w.raw()); }

// Merge letters cyclically so that no two neighbours share a generator.
inline std::vector<Letter> cyclically_merged(const RawBraidWord& w) {
  std::vector<Letter> ls = merged(w.letters).letters;
  while (ls.size() >= 2 && ls.front().generator == ls.back().generator) {
    ls.front().exponent += ls.back().exponent;
    ls.pop_back();
    if (ls.front().exponent == 0) {
      ls.erase(ls.begin());
      ls = merged(ls).letters;
    }
  }
  return ls;
}

inline std::optional<AltBraidWord> alt_canonical(const RawBraidWord& w) {
  std::vector<Letter> ls = cyclically_merged(w);
  if (ls.size() < 2 || ls.size() % 2 != 0) return std::nullopt;
  std::size_t start = ls.front().generator == 1 ? 0 : 1;
  std::vector<ExponentPair> pairs;
  for (std::size_t k = 0; k < ls.size(); k += 2) {
    const Letter& s1 = ls[(start + k) % ls.size()];
    const Letter& s2 = ls[(start + k + 1) % ls.size()];
    if (s1.generator != 1 || s2.generator != 2 || s1.exponent >= 0 || s2.exponent <= 0) return std::nullopt;
    pairs.push_back({-s1.exponent, s2.exponent});
  }
  return AltBraidWord(std::move(pairs));
}

// Names one crossing of the closure diagram of an AltBraidWord: the block
// (letter) and the position inside that block.
struct CrossingRef {
  std::size_t letter_index = 0;
  std::size_t strand_slot = 0;
  friend auto operator<=>(const CrossingRef&, const CrossingRef&) = default;
};

inline void check_crossing(const AltBraidWord& w, CrossingRef c) {
  if (c.letter_index >= w.letter_count() || static_cast<Int>(c.strand_slot) >= w.block_size(c.letter_index))
    throw InputError("crossing reference out of range");
}

inline std::vector<CrossingRef> all_crossings(const AltBraidWord& w) {
  std::vector<CrossingRef> out;
  for (std::size_t li = 0; li < w.letter_count(); ++li)
    for (Int s = 0; s < w.block_size(li); ++s) out.push_back({li, static_cast<std::size_t>(s)});
  return out;
}

// ---------------------------------------------------------------------------
// Unit-letter words: +-1 for sigma1^{+-1}, +-2 for sigma2^{+-1}.

using UnitWord = std::vector<int>;

inline UnitWord expand_letters(const RawBraidWord& w) {
  UnitWord u;
  for (const Letter& l : w.letters) {
    const int code = l.exponent > 0 ? l.generator : -l.generator;
    for (Int k = 0; k < std::abs(l.exponent); ++k) u.push_back(code);
  }
  return u;
}

// Keeps letters as they are; merging would cancel the changed crossing.
inline RawBraidWord collect_letters(const UnitWord& u) {
  RawBraidWord w;
  for (int c : u) {
    const Letter l{std::abs(c), c > 0 ? 1 : -1};
    if (!w.letters.empty() && w.letters.back().generator == l.generator &&
        (w.letters.back().exponent > 0) == (l.exponent > 0))
      w.letters.back().exponent += l.exponent;
    else
      w.letters.push_back(l);
  }
  return w;
}

inline UnitWord rotated(const UnitWord& u, std::size_t s) {
  UnitWord r(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) r[k] = u[(s + k) % u.size()];
  return r;
}

// Largest rotation; used as a cyclic-word key.
inline UnitWord cyclic_key(const UnitWord& u) {
  UnitWord best = u;
  for (std::size_t s = 1; s < u.size(); ++s) best = std::max(best, rotated(u, s));
  return best;
}

inline UnitWord swap_letters(const UnitWord& u) {
  // sigma1^{-1} <-> sigma2, i.e. flip composed with mirror.
  UnitWord r;
  for (int c : u) r.push_back(std::abs(c) == 1 ? 2 * (c > 0 ? -1 : 1) : (c > 0 ? -1 : 1));
  return r;
}

inline UnitWord reversed(const UnitWord& u) { return UnitWord(u.rbegin(), u.rend()); }

// Word of the diagram with crossing c changed.
inline UnitWord changed_word(const AltBraidWord& w, CrossingRef c) {
  check_crossing(w, c);
  UnitWord u = expand_letters(w.raw());
  std::size_t pos = 0;
  for (std::size_t li = 0; li < c.letter_index; ++li) pos += static_cast<std::size_t>(w.block_size(li));
  pos += c.strand_slot;
  u[pos] = -u[pos];
  return u;
}

inline RawBraidWord changed_raw(const AltBraidWord& w, CrossingRef c) { return collect_letters(changed_word(w, c)); }

// ---------------------------------------------------------------------------
// Almost-alternating rewriting.

enum class ReductionCase { A, B, C };

struct RewriteStep {
  int rule = 0;  // 1: s2 s1 s2 s1^-1 -> s1 s2,  2: s1^-1 s2 s1 s2 -> s2 s1
  std::size_t position = 0;
  friend bool operator==(const RewriteStep&, const RewriteStep&) = default;
};

struct ReductionOutcome {
  ReductionCase kase = ReductionCase::A;
  RawBraidWord residual;
  bool h_factor = false;  // case B: residual stands for h * residual
  std::vector<RewriteStep> trace;
};

inline bool is_almost_alternating(const UnitWord& u) {
  std::size_t plus1 = 0, s2 = 0;
  for (int c : u) {
    if (c == 1) ++plus1;
    if (c == 2) ++s2;
    if (c == -2) return false;
  }
  return plus1 == 1 && s2 >= 1;
}

namespace detail {

inline constexpr std::array<std::array<int, 4>, 2> kPatterns{{{2, 1, 2, -1}, {-1, 2, 1, 2}}};
inline constexpr std::array<std::array<int, 2>, 2> kReplacements{{{1, 2}, {2, 1}}};

inline std::optional<RewriteStep> find_rewrite(const UnitWord& u) {
  const std::size_t n = u.size();
  if (n < 4) return std::nullopt;
  for (std::size_t p = 0; p < n; ++p)
    for (int rule = 0; rule < 2; ++rule) {
      bool hit = true;
      for (std::size_t k = 0; k < 4 && hit; ++k) hit = u[(p + k) % n] == kPatterns[rule][k];
      if (hit) return RewriteStep{rule + 1, p};
    }
  return std::nullopt;
}

inline UnitWord apply_rewrite(const UnitWord& u, RewriteStep s) {
  const std::size_t n = u.size();
  const auto& rep = kReplacements[s.rule - 1];
  UnitWord out;
  if (s.position + 4 <= n) {
    out.assign(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(s.position));
    out.insert(out.end(), rep.begin(), rep.end());
    out.insert(out.end(), u.begin() + static_cast<std::ptrdiff_t>(s.position + 4), u.end());
  } else {
    out.assign(rep.begin(), rep.end());
    for (std::size_t k = (s.position + 4) % n; k < s.position; ++k) out.push_back(u[k]);
  }
  return out;
}

}  // namespace detail

inline ReductionOutcome reduce_almost_alternating(const RawBraidWord& w) {
  UnitWord u = expand_letters(w);
  if (!is_almost_alternating(u)) throw InputError("word is not cyclically almost-alternating");
  ReductionOutcome out;
  const std::size_t bound = 4 * u.size() * u.size();
  while (auto step = detail::find_rewrite(u)) {
    u = detail::apply_rewrite(u, *step);
    out.trace.push_back(*step);
    if (out.trace.size() > bound) throw TheoremViolation("rewriting exceeded its step bound");
  }

  const std::size_t n = u.size();
  const std::size_t q = static_cast<std::size_t>(std::find(u.begin(), u.end(), 1) - u.begin());
  auto at = [&](std::size_t forward, std::size_t back) { return u[(q + 2 * n + forward - back) % n]; };

  if (at(1, 0) == -1 || at(0, 1) == -1) {
    // Cancel sigma1 against a neighbouring sigma1^{-1}.
    const std::size_t first = at(1, 0) == -1 ? q + 2 : q + 1;
    UnitWord rest;
    for (std::size_t k = 0; k + 2 < n; ++k) rest.push_back(u[(first + k) % n]);
    out.kase = ReductionCase::A;
    out.residual = merged(collect_letters(rest).letters);
    return out;
  }
  bool only_s2 = true;
  for (std::size_t k = 0; k < n; ++k) only_s2 = only_s2 && (k == q || u[k] == 2);
  if (only_s2 && n >= 2 && n <= 4) {
    out.kase = ReductionCase::C;
    out.residual = collect_letters(rotated(u, q));
    return out;
  }
  if (n >= 5 && at(0, 2) == 2 && at(0, 1) == 2 && at(1, 0) == 2 && at(2, 0) == 2) {
    UnitWord rest{-1};
    for (std::size_t k = 3; k + 2 < n; ++k) rest.push_back(u[(q + k) % n]);
    out.kase = ReductionCase::B;
    out.h_factor = true;
    out.residual = collect_letters(rest);
    return out;
  }
  throw TheoremViolation("irreducible almost-alternating word fits none of the cases A, B, C");
}

// Accepts a sigma1-changed word (one sigma1 among sigma1^{-1}, sigma2) or a
// sigma2-changed word (one sigma2^{-1} among sigma1^{-1}, sigma2).
inline bool almost_alt_unknot_test(const RawBraidWord& w) {
  UnitWord u = expand_letters(w);
  if (!is_almost_alternating(u)) {
    const UnitWord s = swap_letters(u);
    if (!is_almost_alternating(s)) throw InputError("word is not cyclically almost-alternating");
    u = s;
  }
  const RawBraidWord word = collect_letters(u);
  if (!permutation_class(word).is_three_cycle()) throw InputError("closure is not a knot");
  const ReductionOutcome r = reduce_almost_alternating(word);
  switch (r.kase) {
    case ReductionCase::A: {
      const auto alt = alt_canonical(r.residual);
      return alt && alt->pairs() == std::vector<ExponentPair>{{1, 1}};
    }
    case ReductionCase::C:
      return expand_letters(r.residual) == UnitWord{1, 2};
    case ReductionCase::B:
      return false;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Enumeration.

// Every canonical alternating word with sum(a_i + b_i) <= max_total.
inline std::vector<AltBraidWord> enumerate_alt_words(Int max_total, bool knots_only = true) {
  std::set<AltBraidWord> seen;
  std::vector<ExponentPair> cur;
  auto rec = [&](auto&& self, Int budget) -> void {
    if (!cur.empty()) {
      AltBraidWord w(cur);
      if (!knots_only || permutation_class(w.raw()).is_three_cycle()) seen.insert(std::move(w));
    }
    for (Int a = 1; a + 1 <= budget; ++a)
      for (Int b = 1; a + b <= budget; ++b) {
        cur.push_back({a, b});
        self(self, budget - a - b);
        cur.pop_back();
      }
  };
  rec(rec, max_total);
  return {seen.begin(), seen.end()};
}

struct UnknottingDiagram {
  AltBraidWord word;
  std::vector<CrossingRef> crossings;  // every crossing whose change unknots
  friend auto operator<=>(const UnknottingDiagram&, const UnknottingDiagram&) = default;
};

namespace detail {

// A word with exactly one changed letter, read back as (alternating word,
// changed crossing) in every rotation realising the canonical form.
inline std::optional<std::pair<AltBraidWord, std::vector<CrossingRef>>> locate_change(const UnitWord& u) {
  std::size_t changed = u.size();
  UnitWord base = u;
  for (std::size_t k = 0; k < u.size(); ++k)
    if (u[k] == 1 || u[k] == -2) {
      if (changed != u.size()) return std::nullopt;
      changed = k;
      base[k] = -u[k];
    }
  if (changed == u.size()) return std::nullopt;
  const std::size_t n = base.size();
  std::size_t start = n;
  for (std::size_t k = 0; k < n; ++k)
    if (base[k] == -1 && base[(k + n - 1) % n] == 2) {
      start = k;
      break;
    }
  if (start == n) return std::nullopt;

  std::vector<ExponentPair> pairs;
  CrossingRef at{};
  std::size_t k = 0;
  while (k < n) {
    const int code = base[(start + k) % n];
    std::size_t len = 0;
    while (k + len < n && base[(start + k + len) % n] == code) ++len;
    const std::size_t rel = (changed + n - start) % n;
    const std::size_t li = code == 2 ? 2 * pairs.size() - 1 : 2 * pairs.size();
    if (rel >= k && rel < k + len) at = {li, rel - k};
    if (code == -1)
      pairs.push_back({static_cast<Int>(len), 0});
    else
      pairs.back().b = static_cast<Int>(len);
    k += len;
  }
  const auto rots = canonical_rotations(pairs);
  AltBraidWord word(pairs);
  std::vector<CrossingRef> refs;
  const std::size_t letters = 2 * pairs.size();
  for (std::size_t s : rots) refs.push_back({(at.letter_index + letters - 2 * s) % letters, at.strand_slot});
  return std::make_pair(std::move(word), std::move(refs));
}

}  // namespace detail

// Diagrams built backwards from the two seed words by the inverse rewrites,
// closed under the sigma1^{-1} <-> sigma2 swap and word reversal.
inline std::vector<UnknottingDiagram> enumerate_unknotting_words(Int max_total_exponent) {
  const std::size_t bound = static_cast<std::size_t>(std::max<Int>(max_total_exponent, 0));
  std::set<UnitWord> seen;
  std::vector<UnitWord> frontier;
  auto visit = [&](const UnitWord& u) {
    if (u.size() > bound) return;
    if (seen.insert(cyclic_key(u)).second) frontier.push_back(u);
  };
  visit({1, 2});
  for (const UnitWord& pair : {UnitWord{-1, 1}, UnitWord{1, -1}})
    for (std::size_t p = 0; p < 2; ++p) {
      UnitWord u{-1, 2};
      u.insert(u.begin() + static_cast<std::ptrdiff_t>(p), pair.begin(), pair.end());
      visit(u);
    }
  while (!frontier.empty()) {
    std::vector<UnitWord> next;
    std::swap(next, frontier);
    for (const UnitWord& u : next) {
      const std::size_t n = u.size();
      for (std::size_t p = 0; p < n; ++p) {
        const int x = u[p], y = u[(p + 1) % n];
        UnitWord ins;
        if (x == 1 && y == 2) ins = {2, 1, 2, -1};
        else if (x == 2 && y == 1) ins = {-1, 2, 1, 2};
        else continue;
        UnitWord r = ins;
        for (std::size_t k = 2; k < n; ++k) r.push_back(u[(p + k) % n]);
        visit(r);
      }
    }
  }

  std::set<UnitWord> closed = seen;
  for (bool grew = true; grew;) {
    grew = false;
    for (const UnitWord& u : std::vector<UnitWord>(closed.begin(), closed.end()))
      for (const UnitWord& v : {swap_letters(u), reversed(u)}) grew = closed.insert(cyclic_key(v)).second || grew;
  }

  std::map<AltBraidWord, std::set<CrossingRef>> acc;
  for (const UnitWord& u : closed) {
    auto located = detail::locate_change(u);
    if (!located) continue;
    acc[located->first].insert(located->second.begin(), located->second.end());
  }
  std::vector<UnknottingDiagram> out;
  for (auto& [w, cs] : acc) out.push_back({w, {cs.begin(), cs.end()}});
  return out;
}

}  // namespace u1braid::braid
