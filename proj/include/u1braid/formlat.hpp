#pragma once

// Negative-definite integral forms: cokernel labels, characteristic covectors,
// correction-term tables and the symmetry test for half-integral surgeries.

#include <boost/rational.hpp>

#include <optional>
#include <set>
#include <span>
#include <vector>

#include "u1braid/core.hpp"

namespace u1braid::formlat {

using Rational = boost::rational<Int>;

// [[-n, 1], [1, -2]], determinant 2n - 1.
inline IntMatrix rn_form(Int n) {
  if (n < 1) throw InputError("R_n needs n >= 1");
  return IntMatrix{{-n, 1}, {1, -2}};
}

inline bool assert_negative_definite(const IntMatrix& m) {
  if (!m.symmetric()) throw InputError("form is not symmetric");
  return is_negative_definite(m);
}

inline void require_negative_definite(const IntMatrix& m) {
  if (!assert_negative_definite(m)) throw InputError("form is not negative definite");
}

// Z^k / M Z^k, where vectors are dual-basis coordinates (pairings with the
// basis vectors).
class CokerMap {
 public:
  explicit CokerMap(const IntMatrix& m) : rank_(m.rows()) {
    const SmithForm snf = smith_normal_form(m);
    for (std::size_t t = 0; t < snf.diagonal.size(); ++t) {
      const Int d = snf.diagonal[t];
      if (d == 0) throw InputError("form is degenerate");
      if (d == 1) continue;
      factors_.push_back(d);
      std::vector<Int> row(snf.left.row(t).begin(), snf.left.row(t).end());
      for (Int& x : row) x = mod(x, d);
      projection_.push_back(std::move(row));
    }
    if (factors_.size() == 1) {
      // Normalise so that the first basis vector generating the group maps to 1.
      const Int d = factors_.front();
      std::vector<Int>& f = projection_.front();
      for (Int e : f)
        if (std::gcd(e, d) == 1) {
          const Int s = inverse_mod(e, d);
          for (Int& x : f) x = mod(x * s, d);
          break;
        }
    }
  }

  std::size_t rank() const { return rank_; }
  const std::vector<Int>& invariant_factors() const { return factors_; }
  bool cyclic() const { return factors_.size() <= 1; }

  Int order() const {
    Int o = 1;
    for (Int d : factors_) o *= d;
    return o;
  }

  std::vector<Int> class_of(std::span<const Int> c) const {
    if (c.size() != rank_) throw InputError("covector dimension mismatch");
    std::vector<Int> cls;
    for (std::size_t t = 0; t < factors_.size(); ++t) cls.push_back(mod(dot(projection_[t], c), factors_[t]));
    return cls;
  }

  // Label in Z/order; defined for cyclic groups.
  Int label(std::span<const Int> c) const {
    if (!cyclic()) throw InputError("cokernel is not cyclic");
    const auto cls = class_of(c);
    return cls.empty() ? 0 : cls.front();
  }

  // The linear functional giving label() (cyclic case).
  std::vector<Int> label_functional() const {
    if (!cyclic()) throw InputError("cokernel is not cyclic");
    return factors_.empty() ? std::vector<Int>(rank_, 0) : projection_.front();
  }

 private:
  std::size_t rank_ = 0;
  std::vector<Int> factors_;
  std::vector<std::vector<Int>> projection_;
};

inline CokerMap coker_map(const IntMatrix& m) {
  require_negative_definite(m);
  return CokerMap(m);
}

// Characteristic covectors with M_ii <= c_i <= -M_ii. Every cokernel class
// has a square-maximiser here: c -> c +- 2 M e_j changes the square by
// 4 (M_jj +- c_j), which is positive whenever c_j leaves the window.
inline std::vector<std::vector<Int>> char_box(const IntMatrix& m, Int widen = 1) {
  require_negative_definite(m);
  const std::size_t k = m.rows();
  std::vector<std::vector<Int>> out;
  std::vector<Int> c(k);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == k) {
      out.push_back(c);
      return;
    }
    Int lo = widen * m(i, i);
    if (mod(lo - m(i, i), 2) != 0) ++lo;
    for (Int v = lo; v <= -widen * m(i, i); v += 2) {
      c[i] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

// Cached adjugate for repeated evaluation of c^T M^{-1} c.
class InverseForm {
 public:
  explicit InverseForm(const IntMatrix& m) : adj_(adjugate(m)), det_(determinant(m)) {
    if (det_ == 0) throw InputError("form is degenerate");
  }

  Rational square(std::span<const Int> c) const {
    if (c.size() != adj_.rows()) throw InputError("covector dimension mismatch");
    Int num = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      num += c[i] * dot(adj_.row(i), c);
    }
    return Rational(num, det_);
  }

 private:
  IntMatrix adj_;
  Int det_;
};

inline Rational covector_square(const IntMatrix& m, std::span<const Int> c) { return InverseForm(m).square(c); }

inline bool is_characteristic(const IntMatrix& m, std::span<const Int> c) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (mod(c[i] - m(i, i), 2) != 0) return false;
  return true;
}

// Correction terms indexed by Z/D.
struct DTable {
  Int modulus = 1;
  std::vector<Rational> values;

  const Rational& at(Int label) const { return values.at(static_cast<std::size_t>(mod(label, modulus))); }
  DTable negated() const {
    DTable t = *this;
    for (auto& v : t.values) v = -v;
    return t;
  }
  friend bool operator==(const DTable&, const DTable&) = default;
};

// d(t) = max over characteristic c in class t of (c^2 + k) / 4, with the
// spin-c label of c taken as [c] / 2 in Z/D.
inline DTable d_table_sharp(const IntMatrix& m) {
  const CokerMap coker = coker_map(m);
  if (!coker.cyclic()) throw InputError("cokernel is not cyclic");
  const Int d = coker.order();
  if (d % 2 == 0) throw InputError("discriminant must be odd");
  const Int half = d == 1 ? 0 : inverse_mod(2, d);
  const InverseForm inv(m);
  const auto k = static_cast<Int>(m.rows());
  std::vector<std::optional<Rational>> best(static_cast<std::size_t>(d));
  for (const auto& c : char_box(m)) {
    const Int label = d == 1 ? 0 : mod(coker.label(c) * half, d);
    const Rational v = (inv.square(c) + k) / 4;
    auto& slot = best[static_cast<std::size_t>(label)];
    if (!slot || v > *slot) slot = v;
  }
  DTable t{d, {}};
  for (const auto& v : best) {
    if (!v) throw TheoremViolation("a cokernel class has no covector in the search window");
    t.values.push_back(*v);
  }
  return t;
}

// Tabulated maximiser for label i of the form R_n, D = 2n - 1.
inline std::vector<Int> halfint_maximizer(Int D, Int label) {
  if (D < 3 || D % 2 == 0) throw InputError("D must be odd and at least 3");
  const Int n = (D + 1) / 2;
  Int i = mod(label, D);
  const bool conj = i > n - 1;
  if (conj) i = D - i;
  std::vector<Int> a;
  if (n % 2 == 0) {
    const Int k = n / 2;
    a = i <= k ? std::vector<Int>{2 * i, 0} : std::vector<Int>{2 * i - 2 * n, 2};
  } else {
    const Int k = (n - 1) / 2;
    a = i <= k ? std::vector<Int>{2 * i + 1, -2} : std::vector<Int>{2 * i + 1 - 2 * n, 0};
  }
  if (conj)
    for (Int& x : a) x = -x;
  return a;
}

inline DTable d_table_halfint_unknot(Int D) {
  if (D < 3 || D % 2 == 0) throw InputError("D must be odd and at least 3");
  const IntMatrix r = rn_form((D + 1) / 2);
  const InverseForm inv(r);
  DTable t{D, {}};
  for (Int i = 0; i < D; ++i) t.values.push_back((inv.square(halfint_maximizer(D, i)) + 2) / 4);
  return t;
}

// Units u of Z/D for which i -> tk(u i) satisfies the symmetry relation
// against the unknot table.
inline std::vector<Int> os_symmetry_units(const DTable& tk, Int D) {
  if (tk.modulus != D || static_cast<Int>(tk.values.size()) != D) throw InputError("table does not cover Z/D");
  if (D == 1) return {0};
  const DTable u = d_table_halfint_unknot(D);
  const Int n = (D + 1) / 2;
  const Int k = n / 2;
  const Int first = n % 2 == 0 ? 1 : 0;
  std::vector<Int> units;
  for (Int s = 1; s < D; ++s) {
    if (std::gcd(s, D) != 1) continue;
    bool ok = true;
    for (Int i = first; i <= k && ok; ++i)
      ok = tk.at(s * i) - u.at(i) == tk.at(s * (2 * k - i)) - u.at(2 * k - i);
    if (ok) units.push_back(s);
  }
  return units;
}

inline bool os_symmetry_test(const DTable& tk, Int D) { return !os_symmetry_units(tk, D).empty(); }

// Classes of (<alpha, row_1>, ..., <alpha, row_k>) over alpha in {+-1}^N. The
// class map is linear, so the set is built one column at a time.
inline std::set<std::vector<Int>> one_vector_coverage(const IntMatrix& a, const IntMatrix& m) {
  if (-gram(a) != m) throw InputError("A does not satisfy -A A^T = M");
  const CokerMap coker = coker_map(m);
  std::set<std::vector<Int>> reach{coker.class_of(std::vector<Int>(m.rows(), 0))};
  const auto& factors = coker.invariant_factors();
  for (std::size_t j = 0; j < a.cols(); ++j) {
    const auto col = coker.class_of(a.column(j));
    std::set<std::vector<Int>> next;
    for (const auto& s : reach)
      for (Int sign : {1, -1}) {
        std::vector<Int> t = s;
        for (std::size_t q = 0; q < t.size(); ++q) t[q] = mod(t[q] + sign * col[q], factors[q]);
        next.insert(std::move(t));
      }
    reach = std::move(next);
  }
  return reach;
}

// All classes of the cokernel, in the same representation as class_of.
inline std::set<std::vector<Int>> all_classes(const CokerMap& coker) {
  std::set<std::vector<Int>> out{{}};
  for (Int d : coker.invariant_factors()) {
    std::set<std::vector<Int>> next;
    for (const auto& s : out)
      for (Int v = 0; v < d; ++v) {
        auto t = s;
        t.push_back(v);
        next.insert(std::move(t));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace u1braid::formlat
