#pragma once

// Dense integer matrices and the exact linear algebra used throughout:
// fraction-free determinants, adjugates, Smith normal form.

#include <algorithm>
#include <compare>
#include <cstdlib>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace u1braid {

using Int = std::int64_t;

// Malformed or out-of-contract input supplied by a caller.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A computation contradicted a structural fact the algorithms rely on.
struct TheoremViolation : std::logic_error {
  using std::logic_error::logic_error;
};

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, Int fill = 0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw InputError("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows) {
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw InputError("ragged matrix");
      std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Int operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Int> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Int> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<Int> column(std::size_t j) const {
    std::vector<Int> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  std::vector<std::vector<Int>> to_rows() const {
    std::vector<std::vector<Int>> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i].assign(row(i).begin(), row(i).end());
    return out;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntMatrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("submatrix bounds");
    IntMatrix s(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) s(i, j) = (*this)(r0 + i, c0 + j);
    return s;
  }

  bool symmetric() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(row(a).begin(), row(a).end(), row(b).begin());
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  void negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
  }

  IntMatrix operator-() const {
    IntMatrix m = *this;
    for (auto& v : m.data_) v = -v;
    return m;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    IntMatrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Int aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += aik * b(k, j);
      }
    return p;
  }

  friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum dimension mismatch");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }

  // Shape first, then row-major entries; gives a total order usable in sets.
  friend auto operator<=>(const IntMatrix& a, const IntMatrix& b) {
    if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
    if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
    return a.data_ <=> b.data_;
  }
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

inline Int dot(std::span<const Int> a, std::span<const Int> b) {
  Int s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

// A * A^T.
inline IntMatrix gram(const IntMatrix& a) {
  IntMatrix g(a.rows(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.rows(); ++j) g(i, j) = g(j, i) = dot(a.row(i), a.row(j));
  return g;
}

inline IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix s(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) s(a.rows() + i, a.cols() + j) = b(i, j);
  return s;
}

namespace detail {

using Wide = __int128;

inline Int narrow(Wide v) {
  if (v > Wide(INT64_MAX) || v < Wide(INT64_MIN)) throw std::overflow_error("integer overflow in exact arithmetic");
  return static_cast<Int>(v);
}

// Bareiss elimination in place; returns the sequence of leading principal
// minors when no pivoting was needed, or stops early at a zero pivot.
struct BareissResult {
  Wide det = 0;
  std::vector<Wide> leading_minors;  // only meaningful when !pivoted
  bool pivoted = false;
};

inline BareissResult bareiss(const IntMatrix& m, bool allow_pivot) {
  const std::size_t n = m.rows();
  BareissResult res;
  if (n == 0) {
    res.det = 1;
    return res;
  }
  std::vector<Wide> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  Wide prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k * n + k] == 0) {
      if (!allow_pivot) {
        res.leading_minors.push_back(0);
        return res;
      }
      std::size_t p = k + 1;
      while (p < n && a[p * n + k] == 0) ++p;
      if (p == n) return res;  // singular
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      sign = -sign;
      res.pivoted = true;
    }
    const Wide pivot = a[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a[i * n + j] = (a[i * n + j] * pivot - a[i * n + k] * a[k * n + j]) / prev;
      a[i * n + k] = 0;
    }
    prev = pivot;
    res.leading_minors.push_back(sign * pivot);
  }
  res.det = sign * a[(n - 1) * n + (n - 1)];
  return res;
}

}  // namespace detail

inline Int determinant(const IntMatrix& m) {
  if (!m.square()) throw std::invalid_argument("determinant of non-square matrix");
  return detail::narrow(detail::bareiss(m, true).det);
}

// True iff (-1)^j times every leading j x j minor is positive.
inline bool is_negative_definite(const IntMatrix& m) {
  if (!m.symmetric()) throw InputError("form is not symmetric");
  const auto res = detail::bareiss(m, false);
  if (res.leading_minors.size() != m.rows()) return false;
  for (std::size_t j = 0; j < res.leading_minors.size(); ++j) {
    const bool odd = (j % 2) == 0;  // minor of size j+1
    if (odd ? res.leading_minors[j] >= 0 : res.leading_minors[j] <= 0) return false;
  }
  return true;
}

inline IntMatrix minor_matrix(const IntMatrix& m, std::size_t skip_r, std::size_t skip_c) {
  IntMatrix s(m.rows() - 1, m.cols() - 1);
  for (std::size_t i = 0, si = 0; i < m.rows(); ++i) {
    if (i == skip_r) continue;
    for (std::size_t j = 0, sj = 0; j < m.cols(); ++j) {
      if (j == skip_c) continue;
      s(si, sj++) = m(i, j);
    }
    ++si;
  }
  return s;
}

// adj(M), so that M * adj(M) = det(M) * I.
inline IntMatrix adjugate(const IntMatrix& m) {
  const std::size_t n = m.rows();
  IntMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Int c = determinant(minor_matrix(m, j, i));
      adj(i, j) = ((i + j) % 2 == 0) ? c : -c;
    }
  return adj;
}

// Left-unimodular part of a Smith normal form: U * M * V = diag(d_1, ..., d_k)
// with d_1 | d_2 | ... and d_i >= 0. V is not tracked.
struct SmithForm {
  IntMatrix left;
  std::vector<Int> diagonal;
};

inline SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t nr = m.rows(), nc = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(nr);
  const std::size_t steps = std::min(nr, nc);

  auto row_axpy = [&](std::size_t dst, std::size_t src, Int q) {  // row dst -= q * row src
    for (std::size_t j = 0; j < nc; ++j) a(dst, j) -= q * a(src, j);
    for (std::size_t j = 0; j < nr; ++j) u(dst, j) -= q * u(src, j);
  };
  auto col_axpy = [&](std::size_t dst, std::size_t src, Int q) {
    for (std::size_t i = 0; i < nr; ++i) a(i, dst) -= q * a(i, src);
  };

  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = nr, pj = nc;
      for (std::size_t i = t; i < nr; ++i)
        for (std::size_t j = t; j < nc; ++j)
          if (a(i, j) != 0 && (pi == nr || std::abs(a(i, j)) < std::abs(a(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == nr) break;
      a.swap_rows(t, pi);
      u.swap_rows(t, pi);
      a.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < nr; ++i) {
        row_axpy(i, t, a(i, t) / a(t, t));
        clean = clean && a(i, t) == 0;
      }
      for (std::size_t j = t + 1; j < nc; ++j) {
        col_axpy(j, t, a(t, j) / a(t, t));
        clean = clean && a(t, j) == 0;
      }
      if (!clean) continue;

      // Enforce divisibility of the remaining block by the pivot.
      std::size_t bad = nr;
      for (std::size_t i = t + 1; i < nr && bad == nr; ++i)
        for (std::size_t j = t + 1; j < nc; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == nr) break;
      row_axpy(t, bad, -1);
    }
    if (a(t, t) < 0) {
      for (std::size_t j = 0; j < nc; ++j) a(t, j) = -a(t, j);
      for (std::size_t j = 0; j < nr; ++j) u(t, j) = -u(t, j);
    }
  }
  SmithForm s{std::move(u), {}};
  for (std::size_t t = 0; t < steps; ++t) s.diagonal.push_back(a(t, t));
  return s;
}

inline Int mod(Int a, Int m) {
  const Int r = a % m;
  return r < 0 ? r + m : r;
}

// Inverse of a modulo m; throws when gcd(a, m) != 1.
inline Int inverse_mod(Int a, Int m) {
  Int g = m, x = 0, g1 = mod(a, m), x1 = 1;
  while (g1 != 0) {
    const Int q = g / g1;
    std::tie(g, g1) = std::make_pair(g1, g - q * g1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw std::domain_error("value not invertible modulo " + std::to_string(m));
  return mod(x, m);
}

}  // namespace u1braid
