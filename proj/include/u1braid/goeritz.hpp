#pragma once

// Goeritz forms of closed alternating 3-braids and the classical invariants
// that can be read off the braid exponents.

#include <optional>
#include <vector>

#include "u1braid/braid.hpp"
#include "u1braid/core.hpp"

namespace u1braid::goeritz {

using braid::AltBraidWord;
using braid::CrossingRef;

// Edge of the white graph. Region pieces are numbered 0..r-1; the marked
// region (the one meeting every sigma1 crossing) is `hub`.
struct WhiteEdge {
  std::size_t from = 0;
  std::optional<std::size_t> to;  // empty: edge to the marked region
  CrossingRef crossing;
};

// Piece t is bounded by sigma2 crossings t-1 and t (cyclically); the hub piece
// of block l is the one containing the sigma1^{-a_l} block.
inline std::vector<WhiteEdge> white_edges(const AltBraidWord& w) {
  const auto r = static_cast<std::size_t>(w.sum_b());
  std::vector<WhiteEdge> edges;
  std::size_t piece = 0;  // sigma2 crossings seen so far
  for (std::size_t l = 0; l < w.m(); ++l) {
    const auto& p = w.pairs()[l];
    for (Int s = 0; s < p.a; ++s) edges.push_back({piece, std::nullopt, {2 * l, static_cast<std::size_t>(s)}});
    for (Int s = 0; s < p.b; ++s, ++piece)
      edges.push_back({piece, (piece + 1) % r, {2 * l + 1, static_cast<std::size_t>(s)}});
  }
  return edges;
}

// All incidences +1 except an optional flipped crossing. Loops contribute nothing.
inline IntMatrix goeritz_matrix(std::size_t r, const std::vector<WhiteEdge>& edges,
                                std::optional<CrossingRef> flipped = std::nullopt) {
  IntMatrix g(r, r);
  for (const WhiteEdge& e : edges) {
    const Int mu = (flipped && *flipped == e.crossing) ? -1 : 1;
    if (!e.to) {
      g(e.from, e.from) -= mu;
    } else if (*e.to != e.from) {
      g(e.from, e.from) -= mu;
      g(*e.to, *e.to) -= mu;
      g(e.from, *e.to) += mu;
      g(*e.to, e.from) += mu;
    }
  }
  return g;
}

struct GoeritzForm {
  IntMatrix matrix;
  std::vector<std::vector<CrossingRef>> region_map;  // crossings joining row i to the marked region
  std::vector<CrossingRef> cycle_edges;              // cycle_edges[t] joins rows t and t+1 mod r
  std::optional<AltBraidWord> word;                  // source diagram, when known

  std::size_t rank() const { return matrix.rows(); }
};

inline GoeritzForm goeritz_3braid(const AltBraidWord& w) {
  const auto r = static_cast<std::size_t>(w.sum_b());
  const auto edges = white_edges(w);
  GoeritzForm g{goeritz_matrix(r, edges), std::vector<std::vector<CrossingRef>>(r), {}, w};
  for (const WhiteEdge& e : edges) {
    if (!e.to)
      g.region_map[e.from].push_back(e.crossing);
    else
      g.cycle_edges.push_back(e.crossing);
  }
  return g;
}

// Externally supplied form; no diagram bookkeeping.
inline GoeritzForm goeritz_from_matrix(IntMatrix m) {
  if (!m.square() || m.rows() == 0) throw InputError("Goeritz matrix must be square and nonempty");
  if (!m.symmetric()) throw InputError("Goeritz matrix is not symmetric");
  if (!is_negative_definite(m)) throw InputError("Goeritz matrix is not negative definite");
  GoeritzForm g;
  g.region_map.resize(m.rows());
  g.matrix = std::move(m);
  return g;
}

inline Int determinant(const GoeritzForm& g) { return std::abs(u1braid::determinant(g.matrix)); }

// Exponent pairs of a 3-braid whose Goeritz form is g up to simultaneous
// row/column permutation, read off along the cycle starting at row 0.
inline std::optional<std::vector<braid::ExponentPair>> recognize_3braid(const IntMatrix& g) {
  if (!g.square() || g.rows() == 0 || !g.symmetric()) return std::nullopt;
  const std::size_t r = g.rows();
  std::vector<std::size_t> order{0};
  if (r == 2) {
    if (g(0, 1) != 2) return std::nullopt;
    order.push_back(1);
  } else if (r > 2) {
    std::vector<std::vector<std::size_t>> nbr(r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        if (i == j || g(i, j) == 0) continue;
        if (g(i, j) != 1) return std::nullopt;
        nbr[i].push_back(j);
      }
    for (const auto& n : nbr)
      if (n.size() != 2) return std::nullopt;
    std::size_t prev = 0, cur = nbr[0][0];
    while (cur != 0) {
      order.push_back(cur);
      const std::size_t next = nbr[cur][0] == prev ? nbr[cur][1] : nbr[cur][0];
      prev = cur;
      cur = next;
    }
    if (order.size() != r) return std::nullopt;
  }
  const Int base = r == 1 ? 0 : 2;
  std::vector<std::size_t> hubs;
  for (std::size_t t = 0; t < r; ++t) {
    const Int h = -g(order[t], order[t]) - base;
    if (h < 0) return std::nullopt;
    if (h > 0) hubs.push_back(t);
  }
  if (hubs.empty()) return std::nullopt;
  std::vector<braid::ExponentPair> pairs;
  for (std::size_t k = 0; k < hubs.size(); ++k) {
    const std::size_t t = hubs[k], next = k + 1 < hubs.size() ? hubs[k + 1] : hubs[0] + r;
    pairs.push_back({-g(order[t], order[t]) - base, static_cast<Int>(next - t)});
  }
  return pairs;
}

// Goeritz matrix of the diagram with crossing c changed.
inline IntMatrix changed_goeritz(const AltBraidWord& w, CrossingRef c) {
  braid::check_crossing(w, c);
  return goeritz_matrix(static_cast<std::size_t>(w.sum_b()), white_edges(w), c);
}

// Where a crossing sits in the white graph.
struct CrossingLocation {
  std::size_t row = 0;
  std::optional<std::size_t> other;  // empty for an edge to the marked region
};

inline CrossingLocation locate(const AltBraidWord& w, CrossingRef c) {
  braid::check_crossing(w, c);
  for (const WhiteEdge& e : white_edges(w))
    if (e.crossing == c) return {e.from, e.to};
  throw InputError("crossing not found");
}

// Signature of h^d * w.
inline Int signature_normal_form(Int d, const AltBraidWord& w) { return -4 * d + w.sum_a() - w.sum_b(); }

// Signature of the torus knot T(3, q), q not divisible by 3.
inline Int torus_signature(Int q) {
  if (q % 3 == 0) throw InputError("T(3,q) needs q prime to 3");
  switch (((q % 6) + 6) % 6) {
    case 1: return -8 * ((q - 1) / 6);
    case 5: return -8 * ((q + 1) / 6);
    case 2: return -8 * ((q - 2) / 6) - 2;
    default: return -8 * ((q + 2) / 6) + 2;  // q = 6d - 2
  }
}

inline Int s_invariant_normal_form(Int d, const AltBraidWord& w) {
  const Int s0 = signature_normal_form(0, w);
  if (d > 0) return 6 * d - 2 - s0;
  if (d < 0) return 6 * d + 2 - s0;
  return -s0;
}

inline Int torus_s_invariant(Int q) {
  if (q % 3 == 0) throw InputError("T(3,q) needs q prime to 3");
  return q >= 1 ? 2 * (q - 1) : 2 * (q + 1);
}

// Exponent of h allowed for an unknotting-number-one 3-braid knot with
// signature >= 0.
inline bool d_bound_predicate(Int d, Int /*sigma*/) { return d >= -1 && d <= 2; }

inline AltBraidWord mirror_word(const AltBraidWord& w) {
  std::vector<braid::ExponentPair> pairs;
  for (auto it = w.pairs().rbegin(); it != w.pairs().rend(); ++it) pairs.push_back({it->b, it->a});
  return AltBraidWord(std::move(pairs));
}

struct InvariantRecord {
  Int determinant = 1;
  Int signature = 0;
  Int s_invariant = 0;
  Int n = 1;  // determinant = 2n - 1
  friend bool operator==(const InvariantRecord&, const InvariantRecord&) = default;
};

inline InvariantRecord invariants(const AltBraidWord& w) {
  if (!braid::permutation_class(w.raw()).is_three_cycle()) throw InputError("closure is not a knot");
  InvariantRecord rec;
  rec.determinant = determinant(goeritz_3braid(w));
  rec.signature = signature_normal_form(0, w);
  rec.s_invariant = s_invariant_normal_form(0, w);
  rec.n = (rec.determinant + 1) / 2;
  return rec;
}

}  // namespace u1braid::goeritz
