#pragma once

// Worked examples shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <numeric>
#include <vector>

#include "u1braid/braid.hpp"
#include "u1braid/core.hpp"
#include "u1braid/embed.hpp"

namespace fixture {

using u1braid::Int;
using u1braid::IntMatrix;

inline const char* const kWord87 = "s1^-4 s2 s1^-1 s2^2";
inline const char* const kWord1079 = "s1^-3 s2^2 s1^-2 s2^3";

inline IntMatrix g87() { return IntMatrix{{-6, 1, 1}, {1, -3, 1}, {1, 1, -2}}; }

inline IntMatrix g1079() {
  return IntMatrix{{-5, 1, 0, 0, 1}, {1, -2, 1, 0, 0}, {0, 1, -4, 1, 0}, {0, 0, 1, -2, 1}, {1, 0, 0, 1, -2}};
}

// Rows v_1..v_r, x, y as printed for 8_7.
inline IntMatrix a87() {
  return IntMatrix{{0, 0, 1, 2, -1}, {1, 1, -1, 0, 0}, {0, 0, 1, -1, 0}, {0, 1, 1, 1, 3}, {1, -1, 0, 0, 0}};
}

// The printed 10_79 matrix with the sign of v_1 in columns 1-2 corrected.
inline IntMatrix a1079() {
  return IntMatrix{{-1, -1, 0, 1, 1, 0, -1}, {0, 0, 0, 0, 0, -1, 1}, {1, 1, 0, 0, 1, 0, -1},
                   {0, 0, 0, 1, -1, 0, 0},   {0, 0, 1, -1, 0, 0, 0},  {0, 1, 2, 2, 2, 3, 3},
                   {1, -1, 0, 0, 0, 0, 0}};
}

inline u1braid::braid::AltBraidWord word(const char* text) {
  return *u1braid::braid::alt_canonical(u1braid::braid::parse_braid_word(text));
}

// Undo the column negations of witness normalisation so that x = (0, 1, tail >= 0)
// and y = (1, -1, ...), then take the criterion canonical form.
inline IntMatrix criterion_class(IntMatrix a, const IntMatrix& g) {
  const std::size_t x = a.rows() - 2, y = a.rows() - 1;
  if (a(x, 1) < 0) a.negate_col(1);
  if (a(x, 0) < 0 || (a(x, 0) == 0 && a(y, 0) < 0)) a.negate_col(0);
  for (std::size_t j = 2; j < a.cols(); ++j)
    if (a(x, j) < 0) a.negate_col(j);
  return u1braid::embed::canonical_criterion_form(a, u1braid::embed::automorphisms(g));
}

// Equality up to independent row and column permutations (small matrices).
inline bool permutation_equivalent(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  std::vector<std::size_t> rp(a.rows()), cp(a.cols());
  std::iota(rp.begin(), rp.end(), 0);
  do {
    std::iota(cp.begin(), cp.end(), 0);
    do {
      bool same = true;
      for (std::size_t i = 0; i < a.rows() && same; ++i)
        for (std::size_t j = 0; j < a.cols() && same; ++j) same = a(rp[i], cp[j]) == b(i, j);
      if (same) return true;
    } while (std::next_permutation(cp.begin(), cp.end()));
  } while (std::next_permutation(rp.begin(), rp.end()));
  return false;
}

}  // namespace fixture
