#pragma once

// The sharpness obstruction for the plumbing bounded by the 8_20 double
// cover: embeddings of its form and the classes reachable by {+-1}-vectors.

#include <map>
#include <vector>

#include "u1braid/core.hpp"
#include "u1braid/embed.hpp"
#include "u1braid/formlat.hpp"

namespace u1braid::pretzel {

inline IntMatrix plumbing_form() {
  return IntMatrix{{-2, 1, 0, 0, 0}, {1, -2, 1, 0, 0}, {0, 1, -2, 1, 1}, {0, 0, 1, -2, 0}, {0, 0, 1, 0, -3}};
}

namespace detail {

inline IntMatrix padded(const IntMatrix& a, std::size_t n) {
  if (n < a.cols()) throw InputError("padding below the embedding width");
  IntMatrix out(a.rows(), n);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  return out;
}

}  // namespace detail

// The two embedding matrices, padded with zero columns to width n.
inline IntMatrix embedding_a1(std::size_t n = 5) {
  return detail::padded(
      IntMatrix{{1, -1, 0, 0, 0}, {0, 1, -1, 0, 0}, {0, 0, 1, -1, 0}, {0, 0, 0, 1, -1}, {-1, -1, -1, 0, 0}}, n);
}

inline IntMatrix embedding_a2(std::size_t n = 6) {
  return detail::padded(IntMatrix{{1, -1, 0, 0, 0, 0},
                                  {0, 1, -1, 0, 0, 0},
                                  {0, 0, 1, -1, 0, 0},
                                  {0, 0, 0, 1, -1, 0},
                                  {0, 0, 0, 1, 1, 1}},
                        n);
}

struct CoverageRow {
  std::size_t n = 0;
  std::size_t classes = 0;  // order of the cokernel
  std::size_t reached = 0;
  std::vector<std::vector<Int>> missed;
};

struct PretzelReport {
  Int determinant = 0;
  std::map<std::size_t, std::size_t> embedding_classes;  // n -> count
  std::vector<CoverageRow> a1, a2;
};

inline CoverageRow coverage_row(const IntMatrix& a, const IntMatrix& m) {
  const auto reached = formlat::one_vector_coverage(a, m);
  const auto all = formlat::all_classes(formlat::coker_map(m));
  CoverageRow row{a.cols(), all.size(), reached.size(), {}};
  for (const auto& c : all)
    if (!reached.count(c)) row.missed.push_back(c);
  return row;
}

inline PretzelReport pretzel_check(std::size_t n_max = 8) {
  if (n_max < 6) throw InputError("n_max must be at least 6");
  const IntMatrix m = plumbing_form();
  PretzelReport rep;
  rep.determinant = std::abs(determinant(m));
  for (std::size_t n = 5; n <= n_max; ++n) {
    rep.embedding_classes[n] = embed::embed_form(m, n).size();
    rep.a1.push_back(coverage_row(embedding_a1(n), m));
    if (n >= 6) rep.a2.push_back(coverage_row(embedding_a2(n), m));
  }
  return rep;
}

}  // namespace u1braid::pretzel
