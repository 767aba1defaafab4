#pragma once

// Partial embedding matrices B (rows v_1..v_r, y) of signature-zero
// witnesses: contraction, expansion, generation of B_0 from the seeds, and
// the structural checks used to rule out <v_i, v_j> = 0.
//
// Pairings follow the negative-definite convention <a, b> = -a.b, so that the
// v-rows pair to the Goeritz form G.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "u1braid/core.hpp"
#include "u1braid/embed.hpp"
#include "u1braid/goeritz.hpp"

namespace u1braid::expandgen {

inline Int pairing(std::span<const Int> a, std::span<const Int> b) { return -dot(a, b); }

class BMatrix {
 public:
  // Validates membership in B_0.
  static BMatrix from_matrix(IntMatrix m) {
    if (m.rows() < 2 || m.cols() != m.rows() + 1) throw InputError("B must be (r+1) x (r+2)");
    const std::size_t r = m.rows() - 1;
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) != (c < 2 ? 1 : 0)) throw InputError("last row of B must be y = (1, 1, 0, ...)");
    for (std::size_t c = 0; c < m.cols(); ++c) {
      Int s = 0;
      for (std::size_t i = 0; i <= r; ++i) s += m(i, c);
      if (s != 1) throw InputError("rows of B do not sum to the all-ones vector");
    }
    BMatrix b;
    b.m_ = std::move(m);
    b.g_ = -gram(b.v_block());
    for (std::size_t t = 0; t < r; ++t)
      if (b.m_(t, 0) + b.m_(t, 1) != 0) throw InputError("v-row not orthogonal to y");
    auto pairs = goeritz::recognize_3braid(b.g_);
    if (!pairs) throw InputError("v-rows do not pair to a 3-braid Goeritz form");
    Int sa = 0;
    for (const auto& p : *pairs) sa += p.a;
    if (sa != static_cast<Int>(r)) throw InputError("exponent sums differ: B is not in B_0");
    b.pairs_ = std::move(*pairs);
    std::optional<std::size_t> i, j;
    for (std::size_t t = 0; t < r; ++t) {
      const Int p = b.m_(t, 0);
      if (p == 0) continue;
      if (p == 1 && !i) {
        i = t;
      } else if (p == -1 && !j) {
        j = t;
      } else {
        throw InputError("columns 1-2 must meet exactly the rows v_i and v_j");
      }
    }
    if (!i || !j) throw InputError("rows v_i and v_j not found");
    b.i_ = *i;
    b.j_ = *j;
    return b;
  }

  const IntMatrix& matrix() const { return m_; }
  std::size_t r() const { return m_.rows() - 1; }
  std::size_t vi() const { return i_; }
  std::size_t vj() const { return j_; }
  std::span<const Int> row(std::size_t t) const { return m_.row(t); }
  IntMatrix v_block() const { return m_.submatrix(0, 0, r(), m_.cols()); }
  // Columns 3..r+2 restricted to the v-rows.
  IntMatrix c_block() const { return m_.submatrix(0, 2, r(), r()); }
  const IntMatrix& goeritz() const { return g_; }
  const std::vector<braid::ExponentPair>& parameters() const { return pairs_; }
  braid::AltBraidWord word() const { return braid::AltBraidWord(pairs_); }
  Int vivj() const { return pairing(row(i_), row(j_)); }

  friend bool operator==(const BMatrix& a, const BMatrix& b) { return a.m_ == b.m_; }
  friend auto operator<=>(const BMatrix& a, const BMatrix& b) { return a.m_ <=> b.m_; }

 private:
  IntMatrix m_, g_;
  std::vector<braid::ExponentPair> pairs_;
  std::size_t i_ = 0, j_ = 0;
};

inline const IntMatrix& seed_m1() {
  static const IntMatrix m{{1, -1, 1, 1}, {-1, 1, 0, 0}, {1, 1, 0, 0}};
  return m;
}
inline const IntMatrix& seed_m2() {
  static const IntMatrix m{{1, -1, 1, 0}, {-1, 1, 0, 1}, {1, 1, 0, 0}};
  return m;
}
inline const IntMatrix& seed_m3() {
  static const IntMatrix m{{0, 0, -1, 1, 1}, {1, -1, 1, 0, 0}, {-1, 1, 1, 0, 0}, {1, 1, 0, 0, 0}};
  return m;
}

// Minimum over permutations of the v-rows and of the columns that fix the
// first two setwise. Column signs are pinned by the column sums, so no
// negations are needed. Rows are first grouped by their entry multiset and
// only permuted within groups.
inline IntMatrix canonical_b(const IntMatrix& m) {
  const std::size_t r = m.rows() - 1, nc = m.cols();
  std::vector<std::pair<std::vector<Int>, std::size_t>> keyed;
  for (std::size_t t = 0; t < r; ++t) {
    std::vector<Int> k(m.row(t).begin(), m.row(t).end());
    std::sort(k.begin(), k.end());
    keyed.emplace_back(std::move(k), t);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::size_t> order(r), group_start(r);
  for (std::size_t t = 0; t < r; ++t) {
    order[t] = keyed[t].second;
    group_start[t] = (t > 0 && keyed[t].first == keyed[t - 1].first) ? group_start[t - 1] : t;
  }
  std::optional<IntMatrix> best;
  std::vector<std::vector<Int>> cols(nc - 2, std::vector<Int>(r + 1));
  auto consider = [&] {
    for (bool swap : {false, true}) {
      IntMatrix b(r + 1, nc);
      for (std::size_t c = 2; c < nc; ++c)
        for (std::size_t t = 0; t <= r; ++t) cols[c - 2][t] = t < r ? m(order[t], c) : m(r, c);
      std::sort(cols.begin(), cols.end());
      for (std::size_t t = 0; t <= r; ++t) {
        const std::size_t src = t < r ? order[t] : r;
        b(t, 0) = m(src, swap ? 1 : 0);
        b(t, 1) = m(src, swap ? 0 : 1);
        for (std::size_t c = 2; c < nc; ++c) b(t, c) = cols[c - 2][t];
      }
      if (!best || b < *best) best = std::move(b);
    }
  };
  // Iterate over the product of within-group permutations.
  auto rec = [&](auto&& self, std::size_t g) -> void {
    if (g == r) {
      consider();
      return;
    }
    std::size_t end = g + 1;
    while (end < r && group_start[end] == g) ++end;
    std::sort(order.begin() + g, order.begin() + end);
    do self(self, end);
    while (std::next_permutation(order.begin() + g, order.begin() + end));
  };
  rec(rec, 0);
  return *best;
}

inline BMatrix canonical(const BMatrix& b) { return BMatrix::from_matrix(canonical_b(b.matrix())); }

struct ExpansionStep {
  int type = 1;
  std::size_t a = 0, b = 0;
  std::optional<std::size_t> c;  // third row, type 3 only
  std::size_t column = 0;        // the existing column Q
  friend bool operator==(const ExpansionStep&, const ExpansionStep&) = default;
};

namespace detail {

struct Support {
  std::vector<std::pair<std::size_t, Int>> entries;  // (row, value) over the v-rows
};

inline Support column_support(const BMatrix& b, std::size_t col) {
  Support s;
  for (std::size_t t = 0; t < b.r(); ++t)
    if (b.matrix()(t, col) != 0) s.entries.emplace_back(t, b.matrix()(t, col));
  return s;
}

inline IntMatrix with_new_row_and_column(const IntMatrix& m) {
  const std::size_t r = m.rows() - 1;
  IntMatrix out(r + 2, m.cols() + 1);
  for (std::size_t t = 0; t <= r; ++t)
    for (std::size_t c = 0; c < m.cols(); ++c) out(t < r ? t : r + 1, c) = m(t, c);
  return out;
}

inline IntMatrix without_row_and_column(const IntMatrix& m, std::size_t row, std::size_t col) {
  IntMatrix out(m.rows() - 1, m.cols() - 1);
  for (std::size_t t = 0, ot = 0; t < m.rows(); ++t) {
    if (t == row) continue;
    for (std::size_t c = 0, oc = 0; c < m.cols(); ++c)
      if (c != col) out(ot, oc++) = m(t, c);
    ++ot;
  }
  return out;
}

inline BMatrix checked(IntMatrix m, const char* what) {
  try {
    return BMatrix::from_matrix(std::move(m));
  } catch (const InputError& e) {
    throw TheoremViolation(std::string(what) + " left B_0: " + e.what());
  }
}

}  // namespace detail

// All applicable expansions of the given types.
inline std::vector<ExpansionStep> expansions(const BMatrix& b, std::set<int> types = {1, 2, 3}) {
  std::vector<ExpansionStep> out;
  const auto adjacent = [&](std::size_t u, std::size_t w) { return u != w && pairing(b.row(u), b.row(w)) >= 1; };
  for (std::size_t q = 2; q < b.matrix().cols(); ++q) {
    const auto s = detail::column_support(b, q).entries;
    if (types.count(1) && s.size() == 1 && s[0].second == 1) {
      for (std::size_t w = 0; w < b.r(); ++w)
        if (adjacent(s[0].first, w)) out.push_back({1, s[0].first, w, std::nullopt, q});
    } else if (types.count(2) && s.size() == 2) {
      for (int k = 0; k < 2; ++k)
        if (s[k].second == 2 && s[1 - k].second == -1 && adjacent(s[k].first, s[1 - k].first))
          out.push_back({2, s[k].first, s[1 - k].first, std::nullopt, q});
    } else if (types.count(3) && s.size() == 3) {
      std::vector<std::size_t> ones;
      std::optional<std::size_t> neg;
      for (const auto& [t, v] : s) {
        if (v == 1) ones.push_back(t);
        if (v == -1) neg = t;
      }
      if (ones.size() != 2 || !neg) continue;
      for (int k = 0; k < 2; ++k)
        if (adjacent(ones[k], *neg)) out.push_back({3, ones[k], *neg, ones[1 - k], q});
    }
  }
  return out;
}

// The new row v_s is inserted just above y and the new column appended last.
inline BMatrix expand(const BMatrix& b, const ExpansionStep& st) {
  const std::size_t r = b.r(), q = st.column;
  if (q < 2 || q >= b.matrix().cols()) throw InputError("expansion column must be one of columns 3..r+2");
  if (st.a >= r || st.b >= r || st.a == st.b) throw InputError("bad expansion rows");
  if (pairing(b.row(st.a), b.row(st.b)) < 1) throw InputError("expansion needs <a', b'> >= 1");
  const auto s = detail::column_support(b, q).entries;
  const auto value = [&](std::size_t t) { return b.matrix()(t, q); };
  const auto support_within = [&](std::initializer_list<std::size_t> rows) {
    for (const auto& [t, v] : s)
      if (std::find(rows.begin(), rows.end(), t) == rows.end()) return false;
    return true;
  };
  IntMatrix m = detail::with_new_row_and_column(b.matrix());
  const std::size_t vs = r, p = m.cols() - 1;
  m(vs, p) = 1;
  m(vs, q) = -1;
  switch (st.type) {
    case 1:
      if (!support_within({st.a}) || value(st.a) != 1) throw InputError("type 1 expansion needs the column pattern (1, 0)");
      m(st.b, q) = 1;
      break;
    case 2:
      if (!support_within({st.a, st.b}) || value(st.a) != 2 || value(st.b) != -1)
        throw InputError("type 2 expansion needs the column pattern (2, -1)");
      m(st.a, p) = 1;
      m(st.b, p) = -1;
      m(st.b, q) = 0;
      break;
    case 3:
      if (!st.c || *st.c >= r || *st.c == st.a || *st.c == st.b || !support_within({*st.c, st.a, st.b}) ||
          value(*st.c) != 1 || value(st.a) != 1 || value(st.b) != -1)
        throw InputError("type 3 expansion needs the column pattern (1, 1, -1)");
      m(*st.c, p) = 1;
      m(st.b, p) = -1;
      m(st.b, q) = 0;
      break;
    default:
      throw InputError("expansion type must be 1, 2 or 3");
  }
  return detail::checked(std::move(m), "expansion");
}

struct Contraction {
  int type = 1;
  std::size_t s = 0;
  std::size_t p = 0, q = 0;  // columns of the +1 and -1 entries of v_s
  std::size_t drop = 0;      // type 1: the neighbour that loses its entry in q
};

// Classifies the contraction at row s; drop_row selects the neighbour that
// gives up its entry in a type 1 contraction (default: the larger square).
inline Contraction contraction_at(const BMatrix& b, std::size_t s, std::optional<std::size_t> drop_row = std::nullopt) {
  const std::size_t r = b.r();
  if (s >= r) throw InputError("contraction row out of range");
  if (r <= 2) throw InputError("contraction needs r > 2");
  if (dot(b.row(s), b.row(s)) != 2) throw InputError("contraction row must have square -2");
  Contraction k{0, s};
  bool have_p = false, have_q = false;
  for (std::size_t c = 0; c < b.matrix().cols(); ++c) {
    const Int v = b.matrix()(s, c);
    if (v == 1) k.p = c, have_p = true;
    if (v == -1) k.q = c, have_q = true;
  }
  if (!have_p || !have_q || k.p < 2 || k.q < 2) throw InputError("no contraction pattern at this row");
  const auto ps = detail::column_support(b, k.p).entries, qs = detail::column_support(b, k.q).entries;
  auto others = [&](const auto& sup) {
    std::vector<std::pair<std::size_t, Int>> o;
    for (const auto& e : sup)
      if (e.first != s) o.push_back(e);
    return o;
  };
  const auto po = others(ps), qo = others(qs);
  if (po.empty() && qo.size() == 2 && qo[0].second == 1 && qo[1].second == 1) {
    k.type = 1;
    const std::size_t u = qo[0].first, w = qo[1].first;
    const auto sq = [&](std::size_t t) { return dot(b.row(t), b.row(t)); };
    if (drop_row) {
      if (*drop_row != u && *drop_row != w) throw InputError("drop row is not a neighbour in the pattern");
      k.drop = *drop_row;
    } else {
      k.drop = sq(w) >= sq(u) ? w : u;
    }
    if (sq(k.drop) < 3) throw InputError("the row giving up its entry must have square < -2");
    return k;
  }
  if (po.size() == 2 && qo.size() == 1 && qo[0].second == 2) {
    const std::size_t a = qo[0].first;
    const bool ok = (po[0].first == a && po[0].second == 1 && po[1].second == -1) ||
                    (po[1].first == a && po[1].second == 1 && po[0].second == -1);
    if (ok) {
      k.type = 2;
      return k;
    }
  }
  if (po.size() == 2 && qo.size() == 2) {
    // c meets both columns with 1, b has -1 in p, a has 1 in q only.
    std::optional<std::size_t> c, bb;
    for (const auto& [t, v] : po) {
      if (v == 1) c = t;
      if (v == -1) bb = t;
    }
    bool ok = c && bb;
    if (ok) {
      ok = false;
      for (const auto& [t, v] : qo)
        if (t == *c && v == 1) ok = true;
      for (const auto& [t, v] : qo)
        if (t != *c && (v != 1 || t == *bb)) ok = false;
    }
    if (ok) {
      k.type = 3;
      return k;
    }
  }
  throw InputError("no contraction pattern at this row");
}

inline BMatrix contract(const BMatrix& b, std::size_t s, std::optional<std::size_t> drop_row = std::nullopt) {
  const Contraction k = contraction_at(b, s, drop_row);
  IntMatrix m = b.matrix();
  if (k.type == 1) {
    m(k.drop, k.q) = 0;
  } else {
    // The row with -1 in p takes -1 in q.
    for (std::size_t t = 0; t < b.r(); ++t)
      if (t != s && m(t, k.p) == -1) m(t, k.q) = -1;
  }
  return detail::checked(detail::without_row_and_column(m, s, k.p), "contraction");
}

// Every type 1 contraction available, over all rows and drop choices.
inline std::vector<BMatrix> type1_contractions(const BMatrix& b) {
  std::vector<BMatrix> out;
  if (b.r() <= 2) return out;
  for (std::size_t s = 0; s < b.r(); ++s) {
    Contraction k;
    try {
      k = contraction_at(b, s);
    } catch (const InputError&) {
      continue;
    }
    if (k.type != 1) continue;
    for (std::size_t t = 0; t < b.r(); ++t)
      if (t != s && b.matrix()(t, k.q) == 1 && dot(b.row(t), b.row(t)) >= 3) out.push_back(contract(b, s, t));
  }
  return out;
}

struct GenerationStats {
  std::size_t expansions_applied = 0;
  std::size_t type2_applicable = 0;  // expected to stay zero
};

// Canonical members of B_0 with 2 <= r <= r_max, sorted by (r, matrix).
inline std::vector<BMatrix> generate_B0(std::size_t r_max, GenerationStats* stats = nullptr) {
  if (r_max < 2) throw InputError("r_max must be at least 2");
  std::set<IntMatrix> seen;
  std::vector<BMatrix> layer, out;
  auto add = [&](const BMatrix& b, std::vector<BMatrix>& into) {
    IntMatrix c = canonical_b(b.matrix());
    if (seen.insert(c).second) into.push_back(BMatrix::from_matrix(std::move(c)));
  };
  add(BMatrix::from_matrix(seed_m1()), layer);
  add(BMatrix::from_matrix(seed_m2()), layer);
  for (std::size_t r = 2; r <= r_max; ++r) {
    if (r == 3) add(BMatrix::from_matrix(seed_m3()), layer);
    std::sort(layer.begin(), layer.end());
    std::vector<BMatrix> next;
    for (const BMatrix& b : layer) {
      out.push_back(b);
      if (r == r_max) continue;
      if (stats) stats->type2_applicable += expansions(b, {2}).size();
      for (const auto& st : expansions(b, {1, 3})) {
        add(expand(b, st), next);
        if (stats) ++stats->expansions_applied;
      }
    }
    layer = std::move(next);
  }
  return out;
}

// Nonzero multiset of every column is {1, 1, -1}, {2, -1} or {1}.
inline bool column_multiset_check(const BMatrix& b) {
  const IntMatrix& m = b.matrix();
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::vector<Int> nz;
    for (std::size_t t = 0; t < m.rows(); ++t)
      if (m(t, c) != 0) nz.push_back(m(t, c));
    std::sort(nz.begin(), nz.end());
    if (nz != std::vector<Int>{-1, 1, 1} && nz != std::vector<Int>{-1, 2} && nz != std::vector<Int>{1}) return false;
  }
  return true;
}

struct StructureReport {
  bool reachable_type1 = false;  // contracts to M1 or M2 through type 1 steps only
  std::size_t k = 0, l = 0;      // lengths of the two staircases
  std::vector<std::size_t> row_order, column_order;  // into the C block
  IntMatrix block;                                   // C with rows/columns permuted
};

namespace detail {

inline bool reaches_seed(const BMatrix& b, std::map<IntMatrix, bool>& memo) {
  const IntMatrix key = canonical_b(b.matrix());
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  bool ok = false;
  if (b.r() == 2) {
    ok = key == canonical_b(seed_m1()) || key == canonical_b(seed_m2());
  } else {
    for (const BMatrix& c : type1_contractions(b))
      if ((ok = reaches_seed(c, memo))) break;
  }
  memo.emplace(key, ok);
  return ok;
}

}  // namespace detail

// Reachability by type 1 contractions, and the staircase block form of C
// with two chains headed by the distinguished entries.
inline StructureReport vivj_structure_check(const BMatrix& b) {
  if (b.vivj() != 0) throw InputError("structure check needs <v_i, v_j> = 0");
  StructureReport rep;
  std::map<IntMatrix, bool> memo;
  rep.reachable_type1 = detail::reaches_seed(b, memo);
  if (!rep.reachable_type1) throw TheoremViolation("B does not contract to M1 or M2 by type 1 steps");

  const IntMatrix c = b.c_block();
  const std::size_t r = b.r();
  // Each non-distinguished row has exactly one -1; its column is q(row).
  std::vector<std::size_t> rows;
  std::map<std::size_t, std::size_t> q_of, row_of_q;
  for (std::size_t t = 0; t < r; ++t) {
    if (t == b.vi() || t == b.vj()) continue;
    rows.push_back(t);
    std::optional<std::size_t> q;
    for (std::size_t col = 0; col < r; ++col)
      if (c(t, col) == -1) {
        if (q) throw TheoremViolation("row with two -1 entries");
        q = col;
      }
    if (!q) throw TheoremViolation("row without a -1 entry");
    q_of[t] = *q;
    row_of_q[*q] = t;
  }
  std::vector<std::size_t> heads, dist_cols;
  for (std::size_t col = 0; col < r; ++col) {
    std::vector<std::size_t> nz;
    for (std::size_t t = 0; t < r; ++t)
      if (c(t, col) != 0) nz.push_back(t);
    if (nz.size() == 1) {
      if (c(nz[0], col) != 1 || nz[0] == b.vi() || nz[0] == b.vj())
        throw TheoremViolation("distinguished entry in an unexpected place");
      heads.push_back(nz[0]);
      dist_cols.push_back(col);
    }
  }
  if (heads.size() != 2) throw TheoremViolation("expected two distinguished entries");

  // Row u depends on row w when u has a 1 in q(w); chains are the components.
  std::map<std::size_t, std::vector<std::size_t>> deps;
  std::vector<std::size_t> parent(r);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t u : rows)
    for (std::size_t col = 0; col < r; ++col)
      if (c(u, col) == 1 && row_of_q.count(col)) {
        const std::size_t w = row_of_q[col];
        deps[u].push_back(w);
        parent[find(u)] = find(w);
      }
  for (int h = 0; h < 2; ++h) {
    const std::size_t head = heads[h];
    std::vector<std::size_t> chain;
    for (std::size_t u : rows)
      if (find(u) == find(head)) chain.push_back(u);
    // Topological order: a row follows everything it depends on.
    std::vector<std::size_t> ordered;
    std::set<std::size_t> placed;
    while (ordered.size() < chain.size()) {
      bool progress = false;
      for (std::size_t u : chain) {
        if (placed.count(u)) continue;
        bool ready = true;
        for (std::size_t w : deps[u]) ready = ready && placed.count(w);
        if (!ready) continue;
        ordered.push_back(u);
        placed.insert(u);
        progress = true;
      }
      if (!progress) throw TheoremViolation("dependency cycle among staircase rows");
    }
    if (ordered.front() != head) throw TheoremViolation("staircase does not start at the distinguished entry");
    (h == 0 ? rep.k : rep.l) = ordered.size();
    rep.column_order.push_back(dist_cols[h]);
    for (std::size_t u : ordered) {
      rep.row_order.push_back(u);
      rep.column_order.push_back(q_of[u]);
    }
  }
  if (rep.k + rep.l + 2 != r) throw TheoremViolation("staircases do not cover the non-distinguished rows");
  rep.row_order.push_back(b.vi());
  rep.row_order.push_back(b.vj());

  IntMatrix& blk = rep.block = IntMatrix(r, r);
  for (std::size_t t = 0; t < r; ++t)
    for (std::size_t col = 0; col < r; ++col) blk(t, col) = c(rep.row_order[t], rep.column_order[col]);

  // Row t of chain h sits at offset o + t and has its -1 in column o + t + 1,
  // stars below the diagonal within the chain, and zeros elsewhere.
  const std::size_t k = rep.k, l = rep.l;
  auto chain_of_col = [&](std::size_t col) -> std::size_t { return col < k + 1 ? 0 : 1; };
  for (std::size_t t = 0; t < k + l; ++t) {
    const std::size_t h = t < k ? 0 : 1, o = h == 0 ? 0 : k, co = h == 0 ? 0 : k + 1, local = t - o;
    for (std::size_t col = 0; col < r; ++col) {
      const Int v = blk(t, col);
      Int want_lo = 0, want_hi = 0;
      if (chain_of_col(col) == h) {
        const std::size_t lc = col - co;
        if (lc == 0) want_lo = want_hi = local == 0 ? 1 : 0;
        else if (lc == local + 1) want_lo = want_hi = -1;
        else if (lc <= local) want_hi = 1;
      }
      if (v < want_lo || v > want_hi) throw TheoremViolation("C is not in staircase block form");
    }
  }
  for (std::size_t t = k + l; t < r; ++t) {
    std::size_t nz_first = 0, nz_second = 0;
    for (std::size_t col = 0; col < r; ++col) {
      const Int v = blk(t, col);
      const bool dist = col == 0 || col == k + 1;
      if (dist ? v != 0 : (v != 0 && v != 1)) throw TheoremViolation("row v_i or v_j breaks the block form");
      if (v != 0) ++(col < k + 1 ? nz_first : nz_second);
    }
    if (nz_first == 0 || nz_second == 0) throw TheoremViolation("a starred block of v_i or v_j is zero");
  }
  return rep;
}

// x-rows completing B to a signature-zero criterion witness: x = (0, -1, x')
// or (-1, 0, x') in the frame where the rows sum to 1, with x orthogonal to
// the v-rows, x.x = n and det C = +-1. x' is forced by C x' = -(first two
// columns . x), so at most one completion per prefix.
inline std::vector<std::vector<Int>> completions(const BMatrix& b, bool change_making = true) {
  const Int d = std::abs(determinant(b.goeritz()));
  if (d % 2 == 0) return {};
  const Int n = (d + 1) / 2;
  const IntMatrix c = b.c_block();
  const Int det_c = determinant(c);
  if (std::abs(det_c) != 1) return {};
  const IntMatrix adj = adjugate(c);
  const std::size_t r = b.r();
  std::vector<std::vector<Int>> out;
  for (const auto& [x0, x1] : {std::pair<Int, Int>{0, -1}, {-1, 0}}) {
    std::vector<Int> rhs(r);
    for (std::size_t t = 0; t < r; ++t) rhs[t] = -(b.matrix()(t, 0) * x0 + b.matrix()(t, 1) * x1);
    std::vector<Int> x{x0, x1};
    Int norm = x0 * x0 + x1 * x1;
    std::vector<Int> tail;
    for (std::size_t t = 0; t < r; ++t) {
      const Int v = dot(adj.row(t), rhs) * det_c;  // det_c = +-1 is its own inverse
      x.push_back(v);
      tail.push_back(std::abs(v));
      norm += v * v;
    }
    if (norm != n) continue;
    if (change_making && !embed::change_making_ok(tail)) continue;
    out.push_back(std::move(x));
  }
  return out;
}

struct ClaimReport {
  std::size_t members = 0;              // B_0 members examined
  std::size_t orthogonal = 0;           // of those, with <v_i, v_j> = 0
  std::size_t completions_without_cm = 0;  // orthogonal ones completable if change-making is dropped
  std::size_t completions_with_cm = 0;     // must be zero for the claim
  std::size_t control_completions = 0;     // members with <v_i, v_j> != 0 that complete
  bool holds() const { return completions_with_cm == 0; }
};

inline ClaimReport claim_report(std::size_t r_max) {
  if (r_max > 7) throw InputError("claim check is limited to r_max <= 7");
  ClaimReport rep;
  for (const BMatrix& b : generate_B0(r_max)) {
    ++rep.members;
    if (b.vivj() != 0) {
      if (!completions(b).empty()) ++rep.control_completions;
      continue;
    }
    ++rep.orthogonal;
    if (!completions(b, false).empty()) ++rep.completions_without_cm;
    if (!completions(b, true).empty()) ++rep.completions_with_cm;
  }
  return rep;
}

inline bool claim_bruteforce(std::size_t r_max) { return claim_report(r_max).holds(); }

}  // namespace u1braid::expandgen
