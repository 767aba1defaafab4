#pragma once

// JSON forms of words, matrices, correction-term tables and reports.
// Rationals are written as reduced "p/q" strings so that exact values survive
// a round trip.

#include <json.hpp>

#include <charconv>
#include <optional>
#include <string>

#include "u1braid/braid.hpp"
#include "u1braid/core.hpp"
#include "u1braid/embed.hpp"
#include "u1braid/expandgen.hpp"
#include "u1braid/formlat.hpp"
#include "u1braid/goeritz.hpp"

namespace u1braid {

using json = nlohmann::json;

inline std::string rational_text(const formlat::Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

inline formlat::Rational parse_rational(const std::string& s) {
  auto parse_int = [&](std::string_view v) {
    Int x = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || p != v.data() + v.size()) throw InputError("bad rational: " + s);
    return x;
  };
  const auto slash = s.find('/');
  if (slash == std::string::npos) return parse_int(s);
  const std::string_view sv(s);
  const Int den = parse_int(sv.substr(slash + 1));
  if (den == 0) throw InputError("bad rational: " + s);
  return {parse_int(sv.substr(0, slash)), den};
}

inline void to_json(json& j, const IntMatrix& m) { j = m.to_rows(); }

inline void from_json(const json& j, IntMatrix& m) {
  if (!j.is_array() || j.empty()) throw InputError("matrix must be a nonempty array of rows");
  std::vector<std::vector<Int>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw InputError("matrix rows must be arrays");
    std::vector<Int> row;
    for (const auto& x : r) {
      if (!x.is_number_integer()) throw InputError("matrix entries must be integers");
      row.push_back(x.get<Int>());
    }
    rows.push_back(std::move(row));
  }
  m = IntMatrix::from_rows(rows);
}

namespace braid {

inline void to_json(json& j, const CrossingRef& c) { j = {{"letter", c.letter_index}, {"slot", c.strand_slot}}; }
inline void from_json(const json& j, CrossingRef& c) {
  c.letter_index = j.at("letter").get<std::size_t>();
  c.strand_slot = j.at("slot").get<std::size_t>();
}

}  // namespace braid

namespace formlat {

inline void to_json(json& j, const DTable& t) {
  json values = json::object();
  for (std::size_t i = 0; i < t.values.size(); ++i) values[std::to_string(i)] = rational_text(t.values[i]);
  j = {{"modulus", t.modulus}, {"values", values}};
}

inline void from_json(const json& j, DTable& t) {
  t.modulus = j.at("modulus").get<Int>();
  if (t.modulus < 1) throw InputError("table modulus must be positive");
  t.values.assign(static_cast<std::size_t>(t.modulus), Rational(0));
  const json& values = j.at("values");
  if (static_cast<Int>(values.size()) != t.modulus) throw InputError("table size does not match its modulus");
  for (Int i = 0; i < t.modulus; ++i)
    t.values[static_cast<std::size_t>(i)] = parse_rational(values.at(std::to_string(i)).get<std::string>());
}

}  // namespace formlat

namespace goeritz {

inline void to_json(json& j, const InvariantRecord& r) {
  j = {{"determinant", r.determinant}, {"signature", r.signature}, {"s_invariant", r.s_invariant}, {"n", r.n}};
}
inline void from_json(const json& j, InvariantRecord& r) {
  r.determinant = j.at("determinant").get<Int>();
  r.signature = j.at("signature").get<Int>();
  r.s_invariant = j.at("s_invariant").get<Int>();
  r.n = j.at("n").get<Int>();
}

// External Goeritz input: either a bare matrix or {"goeritz": matrix, ...}.
inline IntMatrix goeritz_input(const json& j) {
  IntMatrix m;
  from_json(j.is_object() ? j.at("goeritz") : j, m);
  return m;
}

}  // namespace goeritz

namespace embed {

inline void to_json(json& j, const CriterionWitness& w);
inline void to_json(json& j, const PipelineReport& r);

}  // namespace embed

}  // namespace u1braid

// AltBraidWord has no default constructor, so it goes through adl_serializer.
template <>
struct nlohmann::adl_serializer<u1braid::braid::AltBraidWord> {
  static void to_json(json& j, const u1braid::braid::AltBraidWord& w) {
    json pairs = json::array(), letters = json::array();
    for (const auto& p : w.pairs()) pairs.push_back({p.a, p.b});
    for (const auto& l : w.raw().letters) letters.push_back({l.generator, l.exponent});
    j = {{"text", u1braid::braid::to_text(w)}, {"pairs", pairs}, {"letters", letters}};
  }
  static u1braid::braid::AltBraidWord from_json(const json& j) {
    std::vector<u1braid::braid::ExponentPair> pairs;
    if (j.is_string()) {
      auto w = u1braid::braid::alt_canonical(u1braid::braid::parse_braid_word(j.get<std::string>()));
      if (!w) throw u1braid::InputError("word is not an alternating 3-braid");
      return *w;
    }
    for (const auto& p : j.at("pairs")) pairs.push_back({p.at(0).get<u1braid::Int>(), p.at(1).get<u1braid::Int>()});
    return u1braid::braid::AltBraidWord(std::move(pairs));
  }
};

template <>
struct nlohmann::adl_serializer<u1braid::braid::UnknottingDiagram> {
  static void to_json(json& j, const u1braid::braid::UnknottingDiagram& d) {
    j = {{"word", d.word}, {"crossings", d.crossings}};
  }
  static u1braid::braid::UnknottingDiagram from_json(const json& j) {
    return {j.at("word").get<u1braid::braid::AltBraidWord>(), j.at("crossings").get<std::vector<u1braid::braid::CrossingRef>>()};
  }
};

template <>
struct nlohmann::adl_serializer<u1braid::expandgen::BMatrix> {
  static void to_json(json& j, const u1braid::expandgen::BMatrix& b) {
    std::vector<std::size_t> v_rows(b.r());
    for (std::size_t t = 0; t < b.r(); ++t) v_rows[t] = t;
    json pairs = json::array();
    for (const auto& p : b.parameters()) pairs.push_back({p.a, p.b});
    j = {{"matrix", b.matrix()},
         {"roles", {{"v_rows", v_rows}, {"y_row", b.r()}, {"i", b.vi()}, {"j", b.vj()}}},
         {"parameters", pairs},
         {"vivj", b.vivj()}};
  }
  static u1braid::expandgen::BMatrix from_json(const json& j) {
    return u1braid::expandgen::BMatrix::from_matrix(j.at("matrix").get<u1braid::IntMatrix>());
  }
};

namespace u1braid::embed {

inline void to_json(json& j, const CriterionWitness& w) {
  j = {{"matrix", w.matrix}, {"sigma_case", w.sigma_case}, {"marked_rows", w.marked_rows},
       {"mirrored", w.mirrored}, {"verified", w.verified}};
  j["diagram"] = w.diagram ? json(*w.diagram) : json(nullptr);
  j["crossing"] = w.crossing ? json(*w.crossing) : json(nullptr);
}

inline void from_json(const json& j, CriterionWitness& w) {
  w.matrix = j.at("matrix").get<IntMatrix>();
  w.sigma_case = j.at("sigma_case").get<int>();
  w.marked_rows = j.at("marked_rows").get<std::vector<std::size_t>>();
  w.mirrored = j.at("mirrored").get<bool>();
  w.verified = j.at("verified").get<bool>();
  w.diagram.reset();
  w.crossing.reset();
  if (j.contains("diagram") && !j["diagram"].is_null()) w.diagram = j["diagram"].get<AltBraidWord>();
  if (j.contains("crossing") && !j["crossing"].is_null()) w.crossing = j["crossing"].get<CrossingRef>();
}

inline Stage stage_from_string(const std::string& s) {
  for (Stage st : {Stage::sigma_bound, Stage::parity, Stage::search_empty, Stage::change_making, Stage::witness})
    if (to_string(st) == s) return st;
  throw InputError("unknown stage: " + s);
}

inline void to_json(json& j, const PipelineReport& r) {
  j = {{"sigma", r.sigma}, {"determinant", r.determinant}, {"n", r.n}, {"epsilon", r.epsilon},
       {"stage", to_string(r.stage)}, {"verdict", r.verdict()}, {"witnesses", r.witnesses}};
  j["word"] = r.word ? json(*r.word) : json(nullptr);
  j["goeritz"] = r.goeritz ? json(*r.goeritz) : json(nullptr);
}

inline void from_json(const json& j, PipelineReport& r) {
  r.sigma = j.at("sigma").get<Int>();
  r.determinant = j.at("determinant").get<Int>();
  r.n = j.at("n").get<Int>();
  r.epsilon = j.at("epsilon").get<int>();
  r.stage = stage_from_string(j.at("stage").get<std::string>());
  r.witnesses = j.at("witnesses").get<std::vector<CriterionWitness>>();
  r.word.reset();
  r.goeritz.reset();
  if (j.contains("word") && !j["word"].is_null()) r.word = j["word"].get<AltBraidWord>();
  if (j.contains("goeritz") && !j["goeritz"].is_null()) r.goeritz = j["goeritz"].get<IntMatrix>();
}

}  // namespace u1braid::embed
