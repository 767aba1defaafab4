#pragma once

// Embeddings of negative-definite forms into the diagonal lattice -Z^N, the
// unknotting criterion search built on them, and witness post-processing.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "u1braid/braid.hpp"
#include "u1braid/core.hpp"
#include "u1braid/goeritz.hpp"

namespace u1braid::embed {

using braid::AltBraidWord;
using braid::CrossingRef;
using goeritz::GoeritzForm;
using InvariantsRow = goeritz::InvariantRecord;

// ---------------------------------------------------------------------------
// Row-by-row backtracking.

// Finds every integer matrix whose Gram matrix is `target` (positive
// definite), given some rows already fixed. Column symmetries that fix the
// rows placed so far are broken by requiring nonincreasing entries inside
// each class of interchangeable columns, and nonnegative entries where a
// class is still zero on every placed row.
class RowEmbedder {
 public:
  struct FixedRow {
    std::size_t index;
    std::vector<Int> entries;
  };

  RowEmbedder(IntMatrix target, std::size_t rank, std::vector<FixedRow> fixed, std::vector<std::size_t> order)
      : target_(std::move(target)), rank_(rank), order_(std::move(order)), rows_(target_.rows(), rank) {
    std::vector<bool> is_fixed(target_.rows(), false);
    for (const FixedRow& f : fixed) {
      if (f.entries.size() != rank_) throw InputError("fixed row has wrong length");
      std::copy(f.entries.begin(), f.entries.end(), rows_.row(f.index).begin());
      placed_.push_back(f.index);
      is_fixed[f.index] = true;
    }
    for (std::size_t a : placed_)
      for (std::size_t b : placed_)
        if (dot(rows_.row(a), rows_.row(b)) != target_(a, b)) throw InputError("fixed rows violate the target Gram matrix");
    if (placed_.size() + order_.size() != target_.rows()) throw InputError("row order does not cover the free rows");

    // Maximal runs of columns that agree on the fixed rows.
    std::size_t begin = 0;
    for (std::size_t c = 1; c <= rank_; ++c) {
      if (c < rank_ && same_on_placed(c - 1, c)) continue;
      bool zero = true;
      for (std::size_t p : placed_) zero = zero && rows_(p, begin) == 0;
      classes_.push_back({begin, c, zero});
      begin = c;
    }
  }

  // Calls visit(rows) for each solution; stops early when visit returns false.
  void run(const std::function<bool(const IntMatrix&)>& visit) {
    visit_ = &visit;
    stop_ = false;
    place(0);
  }

 private:
  struct ColumnClass {
    std::size_t begin, end;
    bool sign_free;
  };

  bool same_on_placed(std::size_t a, std::size_t b) const {
    for (std::size_t p : placed_)
      if (rows_(p, a) != rows_(p, b)) return false;
    return true;
  }

  void place(std::size_t depth) {
    if (stop_) return;
    if (depth == order_.size()) {
      if (!(*visit_)(rows_)) stop_ = true;
      return;
    }
    const std::size_t row = order_[depth];
    Frame f;
    f.row = row;
    f.partial.assign(placed_.size(), 0);
    f.need.resize(placed_.size());
    f.suffix.assign(placed_.size(), std::vector<Int>(rank_ + 1, 0));
    for (std::size_t q = 0; q < placed_.size(); ++q) {
      f.need[q] = target_(row, placed_[q]);
      for (std::size_t c = rank_; c-- > 0;) {
        const Int v = rows_(placed_[q], c);
        f.suffix[q][c] = f.suffix[q][c + 1] + v * v;
      }
    }
    f.class_of.resize(rank_);
    for (std::size_t k = 0; k < classes_.size(); ++k)
      for (std::size_t c = classes_[k].begin; c < classes_[k].end; ++c) f.class_of[c] = k;
    fill(f, depth, 0, target_(row, row));
  }

  struct Frame {
    std::size_t row = 0;
    std::vector<Int> partial, need;
    std::vector<std::vector<Int>> suffix;
    std::vector<std::size_t> class_of;
  };

  static Int isqrt(Int v) {
    Int s = static_cast<Int>(std::sqrt(static_cast<double>(v)));
    while (s * s > v) --s;
    while ((s + 1) * (s + 1) <= v) ++s;
    return s;
  }

  bool feasible(const Frame& f, std::size_t col, Int rem) const {
    for (std::size_t q = 0; q < f.partial.size(); ++q) {
      const Int gap = f.need[q] - f.partial[q];
      const Int cap = f.suffix[q][col];
      if (cap == 0 || rem == 0) {
        if (gap != 0) return false;
      } else if (static_cast<detail::Wide>(gap) * gap > static_cast<detail::Wide>(rem) * cap) {
        return false;
      }
    }
    return true;
  }

  void fill(Frame& f, std::size_t depth, std::size_t col, Int rem) {
    if (stop_) return;
    if (col == rank_) {
      if (rem != 0) return;
      for (std::size_t q = 0; q < f.partial.size(); ++q)
        if (f.partial[q] != f.need[q]) return;
      descend(depth);
      return;
    }
    const ColumnClass& cls = classes_[f.class_of[col]];
    Int hi = isqrt(rem);
    Int lo = cls.sign_free ? 0 : -hi;
    if (col > cls.begin) hi = std::min(hi, rows_(f.row, col - 1));
    for (Int e = hi; e >= lo; --e) {
      rows_(f.row, col) = e;
      for (std::size_t q = 0; q < f.partial.size(); ++q) f.partial[q] += e * rows_(placed_[q], col);
      const Int left = rem - e * e;
      if (feasible(f, col + 1, left)) fill(f, depth, col + 1, left);
      for (std::size_t q = 0; q < f.partial.size(); ++q) f.partial[q] -= e * rows_(placed_[q], col);
      if (stop_) break;
    }
    rows_(f.row, col) = 0;
  }

  void descend(std::size_t depth) {
    const std::size_t row = order_[depth];
    const std::vector<ColumnClass> saved = classes_;
    std::vector<ColumnClass> refined;
    for (const ColumnClass& k : saved) {
      std::size_t b = k.begin;
      for (std::size_t c = k.begin + 1; c <= k.end; ++c) {
        if (c < k.end && rows_(row, c) == rows_(row, b)) continue;
        refined.push_back({b, c, k.sign_free && rows_(row, b) == 0});
        b = c;
      }
    }
    classes_ = std::move(refined);
    placed_.push_back(row);
    place(depth + 1);
    placed_.pop_back();
    classes_ = saved;
  }

  IntMatrix target_;
  std::size_t rank_;
  std::vector<std::size_t> order_;
  IntMatrix rows_;
  std::vector<std::size_t> placed_;
  std::vector<ColumnClass> classes_;
  const std::function<bool(const IntMatrix&)>* visit_ = nullptr;
  bool stop_ = false;
};

// Free rows by decreasing norm, ties by index.
inline std::vector<std::size_t> norm_order(const IntMatrix& target, const std::vector<std::size_t>& rows) {
  std::vector<std::size_t> order = rows;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return target(a, a) > target(b, b); });
  return order;
}

// ---------------------------------------------------------------------------
// Canonical forms.

inline bool lex_greater(const std::vector<Int>& a, const std::vector<Int>& b) { return a > b; }

// Representative up to signed column permutation: each column's first
// nonzero entry positive, columns in decreasing lexicographic order.
inline IntMatrix canonical_signed_columns(const IntMatrix& b) {
  std::vector<std::vector<Int>> cols;
  for (std::size_t j = 0; j < b.cols(); ++j) {
    auto c = b.column(j);
    const auto nz = std::find_if(c.begin(), c.end(), [](Int v) { return v != 0; });
    if (nz != c.end() && *nz < 0)
      for (Int& v : c) v = -v;
    cols.push_back(std::move(c));
  }
  std::sort(cols.begin(), cols.end(), lex_greater);
  IntMatrix out(b.rows(), b.cols());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < b.rows(); ++i) out(i, j) = cols[j][i];
  return out;
}

inline std::vector<IntMatrix> embed_form(const IntMatrix& m, std::size_t n_cols) {
  if (!is_negative_definite(m)) throw InputError("form is not negative definite");
  if (n_cols < m.rows()) return {};
  const IntMatrix target = -m;
  std::vector<std::size_t> free(m.rows());
  for (std::size_t i = 0; i < free.size(); ++i) free[i] = i;
  RowEmbedder search(target, n_cols, {}, norm_order(target, free));
  std::set<IntMatrix> found;
  search.run([&](const IntMatrix& b) {
    found.insert(canonical_signed_columns(b));
    return true;
  });
  return {found.begin(), found.end()};
}

// ---------------------------------------------------------------------------
// The criterion.

inline bool change_making_ok(std::vector<Int> xs) {
  std::sort(xs.begin(), xs.end());
  Int total = 0;
  for (Int x : xs) {
    if (x > total + 1) return false;
    total += x;
  }
  return true;
}

// Row permutations p with G(p i, p j) = G(i, j).
inline std::vector<std::vector<std::size_t>> automorphisms(const IntMatrix& g) {
  const std::size_t r = g.rows();
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> p(r);
  std::vector<bool> used(r, false);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == r) {
      out.push_back(p);
      return;
    }
    for (std::size_t c = 0; c < r; ++c) {
      if (used[c] || g(c, c) != g(i, i)) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = g(c, p[j]) == g(i, j);
      if (!ok) continue;
      used[c] = true;
      p[i] = c;
      self(self, i + 1);
      used[c] = false;
    }
  };
  rec(rec, 0);
  return out;
}

// Rows v_1..v_r, x, y. Columns 3.. are ordered by x value, then by the
// column read downwards (decreasing); columns with x = 0 get a positive
// leading entry.
inline IntMatrix canonical_criterion_columns(const IntMatrix& a) {
  const std::size_t r = a.rows() - 2;
  std::vector<std::vector<Int>> cols;
  for (std::size_t j = 2; j < a.cols(); ++j) {
    auto c = a.column(j);
    if (c[r] == 0) {
      const auto nz = std::find_if(c.begin(), c.end(), [](Int v) { return v != 0; });
      if (nz != c.end() && *nz < 0)
        for (Int& v : c) v = -v;
    }
    cols.push_back(std::move(c));
  }
  std::sort(cols.begin(), cols.end(), [&](const auto& u, const auto& v) {
    if (u[r] != v[r]) return u[r] < v[r];
    return u > v;
  });
  IntMatrix out = a;
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) out(i, j + 2) = cols[j][i];
  return out;
}

// Also quotients by the isometries of the v-part: permutations preserving G,
// combined with v -> -v.
inline IntMatrix canonical_criterion_form(const IntMatrix& a, const std::vector<std::vector<std::size_t>>& autos) {
  const std::size_t r = a.rows() - 2;
  std::optional<IntMatrix> best;
  for (const auto& p : autos)
    for (Int sign : {1, -1}) {
      IntMatrix b = a;
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t c = 0; c < a.cols(); ++c) b(i, c) = sign * a(p[i], c);
      b = canonical_criterion_columns(b);
      if (!best || b < *best) best = std::move(b);
    }
  return *best;
}

struct CriterionOptions {
  bool change_making = true;
  std::size_t limit = 0;    // stop after this many raw solutions (0: no limit)
  std::size_t workers = 1;
};

// Sorted nonnegative x-tails with the given square sum.
inline std::vector<std::vector<Int>> x_tails(std::size_t len, Int norm, bool change_making) {
  std::vector<std::vector<Int>> out;
  std::vector<Int> cur;
  auto rec = [&](auto&& self, Int left, Int lo, Int sum) -> void {
    if (cur.size() == len) {
      if (left == 0) out.push_back(cur);
      return;
    }
    const std::size_t slots = len - cur.size();
    for (Int v = lo; v * v <= left; ++v) {
      if (change_making && v > sum + 1) break;
      if (static_cast<Int>(slots) * v * v > left) break;  // the rest are at least v
      cur.push_back(v);
      self(self, left - v * v, v, sum + v);
      cur.pop_back();
    }
  };
  rec(rec, norm, 0, 0);
  return out;
}

inline IntMatrix criterion_target(const IntMatrix& g, Int n) {
  return -direct_sum(g, IntMatrix{{-n, 1}, {1, -2}});
}

inline std::vector<IntMatrix> criterion_search(const IntMatrix& g, Int n, const CriterionOptions& opt = {}) {
  if (!is_negative_definite(g)) throw InputError("Goeritz form is not negative definite");
  if (n < 2 || std::abs(determinant(g)) != 2 * n - 1) throw InputError("determinant of G does not equal 2n - 1");
  const std::size_t r = g.rows(), cols = r + 2;
  const IntMatrix target = criterion_target(g, n);
  std::vector<std::size_t> free(r);
  for (std::size_t i = 0; i < r; ++i) free[i] = i;
  const auto order = norm_order(target, free);
  const auto autos = automorphisms(g);
  const auto tails = x_tails(r, n - 1, opt.change_making);

  std::set<IntMatrix> found;
  std::mutex mu;
  std::atomic<std::size_t> next{0}, raw{0};
  std::atomic<bool> done{false};
  auto worker = [&] {
    for (std::size_t t; !done && (t = next++) < tails.size();) {
      std::vector<Int> y(cols, 0), x(cols, 0);
      y[0] = 1;
      y[1] = -1;
      x[1] = 1;
      std::copy(tails[t].begin(), tails[t].end(), x.begin() + 2);
      RowEmbedder search(target, cols, {{r, x}, {r + 1, y}}, order);
      search.run([&](const IntMatrix& a) {
        if (std::abs(determinant(a.submatrix(0, 2, r, r))) != 1) return true;
        IntMatrix c = canonical_criterion_form(a, autos);
        std::lock_guard lock(mu);
        found.insert(std::move(c));
        if (opt.limit && ++raw >= opt.limit) done = true;
        return !done.load();
      });
    }
  };
  const std::size_t nw = std::max<std::size_t>(1, std::min(opt.workers, tails.size()));
  if (nw == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < nw; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return {found.begin(), found.end()};
}

inline std::vector<IntMatrix> criterion_search(const GoeritzForm& g, Int n, const CriterionOptions& opt = {}) {
  return criterion_search(g.matrix, n, opt);
}

// ---------------------------------------------------------------------------
// Witness normalisation and crossing extraction.

inline IntMatrix negate_to_ones(const IntMatrix& a, const std::vector<Int>& v) {
  IntMatrix out = a;
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (v[c] != 1 && v[c] != -1) throw TheoremViolation("row sum is not a +-1 vector");
    if (v[c] == -1) out.negate_col(c);
  }
  return out;
}

inline std::vector<Int> v_row_sum(const IntMatrix& a) {
  const std::size_t r = a.rows() - 2;
  std::vector<Int> v(a.cols(), 0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t c = 0; c < a.cols(); ++c) v[c] += a(i, c);
  return v;
}

// sigma = 2 case: negate columns until v_1 + ... + v_r is the all-ones vector.
inline IntMatrix normalize_sigma2(const IntMatrix& a) {
  const IntMatrix out = negate_to_ones(a, v_row_sum(a));
  const std::size_t y = a.rows() - 1;
  if (out(y, 0) != -out(y, 1)) throw TheoremViolation("y-row lost its (1, -1) shape under normalisation");
  return out;
}

// Index of the unique v-row meeting columns 1-2 as (1, 1).
inline std::size_t marked_row_sigma2(const IntMatrix& normalized) {
  const std::size_t r = normalized.rows() - 2;
  std::optional<std::size_t> hit;
  for (std::size_t i = 0; i < r; ++i) {
    if (normalized(i, 0) == 1 && normalized(i, 1) == 1) {
      if (hit) throw InputError("more than one v-row is marked in columns 1-2");
      hit = i;
    } else if (normalized(i, 0) != 0 || normalized(i, 1) != 0) {
      throw InputError("unexpected entries of a v-row in columns 1-2");
    }
  }
  if (!hit) throw InputError("no v-row is marked in columns 1-2");
  return *hit;
}

inline CrossingRef extract_crossing_sigma2(const IntMatrix& normalized, const GoeritzForm& g) {
  const std::size_t i = marked_row_sigma2(normalized);
  if (g.matrix(i, i) >= -2) throw TheoremViolation("marked row has square >= -2");
  if (g.region_map.at(i).empty()) throw TheoremViolation("marked region has no crossing with the marked vertex");
  return g.region_map[i].front();
}

struct Sigma0Marks {
  IntMatrix normalized;
  std::size_t i = 0, j = 0;  // rows with (1, -1) and (-1, 1) in columns 1-2
};

inline Sigma0Marks normalize_sigma0(const IntMatrix& a) {
  auto v = v_row_sum(a);
  const std::size_t r = a.rows() - 2, y = r + 1;
  for (std::size_t c = 0; c < a.cols(); ++c) v[c] += a(y, c);
  Sigma0Marks m{negate_to_ones(a, v)};
  if (m.normalized(y, 0) != 1 || m.normalized(y, 1) != 1) throw TheoremViolation("y-row is not (1, 1, 0, ...) after normalisation");
  std::optional<std::size_t> i, j;
  for (std::size_t k = 0; k < r; ++k) {
    const Int p = m.normalized(k, 0), q = m.normalized(k, 1);
    if (p == 1 && q == -1) {
      if (i) throw TheoremViolation("two rows of type (1, -1)");
      i = k;
    } else if (p == -1 && q == 1) {
      if (j) throw TheoremViolation("two rows of type (-1, 1)");
      j = k;
    } else if (p != 0 || q != 0) {
      throw TheoremViolation("unexpected entries of a v-row in columns 1-2");
    }
  }
  if (!i || !j) throw TheoremViolation("rows v_i, v_j not found");
  m.i = *i;
  m.j = *j;
  return m;
}

inline CrossingRef normalize_sigma0_and_extract(const IntMatrix& a, const GoeritzForm& g) {
  const Sigma0Marks m = normalize_sigma0(a);
  const std::size_t r = g.rank();
  const Int pairing = g.matrix(m.i, m.j);
  if (pairing == 0) throw TheoremViolation("rows v_i and v_j are not adjacent in the white graph");
  if (pairing != (r == 2 ? 2 : 1)) throw TheoremViolation("unexpected pairing between v_i and v_j");
  for (std::size_t t = 0; t < g.cycle_edges.size(); ++t) {
    const std::size_t u = t, w = (t + 1) % r;
    if ((u == m.i && w == m.j) || (u == m.j && w == m.i)) return g.cycle_edges[t];
  }
  throw TheoremViolation("no cycle crossing between v_i and v_j");
}

// Changes c, runs the almost-alternating unknot test, and when a witness is
// given also checks that -C C^T is the Goeritz form of the changed diagram.
inline bool verify_unknotting(const AltBraidWord& w, CrossingRef c, const IntMatrix* witness = nullptr) {
  braid::check_crossing(w, c);
  bool ok = braid::almost_alt_unknot_test(braid::changed_raw(w, c));
  if (witness) {
    const std::size_t r = witness->rows() - 2;
    const IntMatrix cc = witness->submatrix(0, 2, r, r);
    const IntMatrix changed = -gram(cc);
    ok = ok && std::abs(determinant(changed)) == 1 && changed == goeritz::changed_goeritz(w, c);
  }
  return ok;
}

// ---------------------------------------------------------------------------
// Pipeline.

enum class Stage { sigma_bound, parity, search_empty, change_making, witness };

inline std::string to_string(Stage s) {
  switch (s) {
    case Stage::sigma_bound: return "sigma_bound";
    case Stage::parity: return "parity";
    case Stage::search_empty: return "search_empty";
    case Stage::change_making: return "change_making";
    case Stage::witness: return "witness";
  }
  return "?";
}

struct CriterionWitness {
  IntMatrix matrix;                    // normalised
  int sigma_case = 2;                  // 2 or 0
  std::vector<std::size_t> marked_rows;  // i (sigma 2) or i, j (sigma 0)
  std::optional<AltBraidWord> diagram;   // word the crossing refers to
  bool mirrored = false;
  std::optional<CrossingRef> crossing;
  bool verified = false;
  friend bool operator==(const CriterionWitness&, const CriterionWitness&) = default;
};

struct PipelineReport {
  std::optional<AltBraidWord> word;
  std::optional<IntMatrix> goeritz;  // external input
  Int sigma = 0;
  Int determinant = 0;
  Int n = 0;
  int epsilon = 0;  // 0 when |sigma| > 2
  Stage stage = Stage::sigma_bound;
  std::vector<CriterionWitness> witnesses;

  std::string verdict() const {
    if (stage != Stage::witness) return "obstructed";
    for (const auto& w : witnesses)
      if (w.verified) return "witness";
    return "unverified";
  }
  friend bool operator==(const PipelineReport&, const PipelineReport&) = default;
};

struct PipelineOptions {
  bool change_making = true;
  std::size_t workers = 1;
};

namespace detail {

// Without the change-making condition the sigma = 0 adjacency of v_i, v_j
// is not guaranteed; such witnesses are kept without a crossing.
inline CriterionWitness make_witness(const IntMatrix& a, const GoeritzForm& g, int sigma_case, bool mirrored,
                                     bool change_making) {
  CriterionWitness w;
  w.sigma_case = sigma_case;
  w.mirrored = mirrored;
  w.diagram = g.word;
  if (sigma_case == 2) {
    w.matrix = normalize_sigma2(a);
    w.marked_rows = {marked_row_sigma2(w.matrix)};
    if (g.word) w.crossing = extract_crossing_sigma2(w.matrix, g);
  } else {
    const Sigma0Marks m = normalize_sigma0(a);
    w.matrix = m.normalized;
    w.marked_rows = {m.i, m.j};
    if (g.word) {
      if (change_making || g.matrix(m.i, m.j) != 0)
        w.crossing = normalize_sigma0_and_extract(a, g);
    }
  }
  if (g.word && w.crossing) w.verified = verify_unknotting(*g.word, *w.crossing, &w.matrix);
  return w;
}

struct Side {
  GoeritzForm form;
  bool mirrored;
};

inline void run_sides(PipelineReport& rep, const std::vector<Side>& sides, int sigma_case, const PipelineOptions& opt) {
  if (((rep.determinant - rep.sigma - 1) % 4 + 4) % 4 != 0) {
    rep.stage = Stage::parity;
    return;
  }
  for (const Side& s : sides) {
    CriterionOptions co{opt.change_making, 0, opt.workers};
    for (const IntMatrix& a : criterion_search(s.form, rep.n, co))
      rep.witnesses.push_back(make_witness(a, s.form, sigma_case, s.mirrored, opt.change_making));
  }
  if (!rep.witnesses.empty()) {
    rep.stage = Stage::witness;
    return;
  }
  rep.stage = Stage::search_empty;
  if (!opt.change_making) return;
  for (const Side& s : sides)
    if (!criterion_search(s.form, rep.n, {false, 1, opt.workers}).empty()) {
      rep.stage = Stage::change_making;
      return;
    }
}

}  // namespace detail

inline PipelineReport u1_pipeline(const AltBraidWord& word, const PipelineOptions& opt = {}) {
  const auto inv = goeritz::invariants(word);
  if (inv.determinant == 1) throw InputError("closure is the unknot");
  PipelineReport rep;
  rep.word = word;
  rep.sigma = inv.signature;
  rep.determinant = inv.determinant;
  rep.n = inv.n;
  if (std::abs(rep.sigma) > 2) return rep;
  rep.epsilon = (rep.sigma / 2) % 2 == 0 ? 1 : -1;

  const AltBraidWord mirror = goeritz::mirror_word(word);
  std::vector<detail::Side> sides;
  if (rep.sigma >= 0) sides.push_back({goeritz::goeritz_3braid(word), false});
  if (rep.sigma <= 0 && (rep.sigma < 0 || mirror != word)) sides.push_back({goeritz::goeritz_3braid(mirror), true});
  detail::run_sides(rep, sides, rep.sigma == 0 ? 0 : 2, opt);
  return rep;
}

// Externally supplied Goeritz form; the signature cannot be derived from the
// matrix alone and is given by the caller.
inline PipelineReport u1_pipeline_matrix(const IntMatrix& g, Int sigma, const PipelineOptions& opt = {}) {
  const GoeritzForm form = goeritz::goeritz_from_matrix(g);
  PipelineReport rep;
  rep.goeritz = g;
  rep.sigma = sigma;
  rep.determinant = goeritz::determinant(form);
  if (rep.determinant % 2 == 0) throw InputError("determinant is even; not a knot");
  if (rep.determinant == 1) throw InputError("determinant 1; the knot is the unknot");
  rep.n = (rep.determinant + 1) / 2;
  if (std::abs(sigma) > 2) return rep;
  if (sigma % 2 != 0) throw InputError("signature must be even");
  rep.epsilon = (sigma / 2) % 2 == 0 ? 1 : -1;
  if (sigma < 0) throw InputError("supply the form of the mirror image (signature 0 or 2)");
  detail::run_sides(rep, {{form, false}}, static_cast<int>(sigma), opt);
  return rep;
}

// One row of the desk-scale check of the main theorem: the pipeline verdict
// against membership in the almost-alternating unknotting family.
struct EnumerationRow {
  AltBraidWord word;
  InvariantsRow invariants;
  std::optional<PipelineReport> report;  // empty for determinant 1
  std::vector<CrossingRef> family_crossings;
  // Determinant 1 closures are unknots and take no part in the comparison.
  bool agrees() const {
    if (!report) return true;
    const bool witness = report && report->verdict() == "witness";
    return witness == !family_crossings.empty();
  }
};

inline std::vector<EnumerationRow> enumerate_main(Int bound, const PipelineOptions& opt = {}) {
  std::map<AltBraidWord, std::vector<CrossingRef>> family;
  for (auto& d : braid::enumerate_unknotting_words(bound)) family.emplace(d.word, std::move(d.crossings));
  const auto words = braid::enumerate_alt_words(bound);
  std::vector<std::optional<EnumerationRow>> rows(words.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t k; (k = next++) < words.size();) {
      try {
        const AltBraidWord& w = words[k];
        EnumerationRow row{w, goeritz::invariants(w), std::nullopt, {}};
        if (auto it = family.find(w); it != family.end()) row.family_crossings = it->second;
        if (row.invariants.determinant != 1) row.report = u1_pipeline(w, {opt.change_making, 1});
        rows[k] = std::move(row);
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  const std::size_t nw = std::max<std::size_t>(1, opt.workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < nw; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  std::vector<EnumerationRow> out;
  for (auto& r : rows) out.push_back(std::move(*r));
  return out;
}

}  // namespace u1braid::embed
