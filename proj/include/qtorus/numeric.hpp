#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "qtorus/errors.hpp"

namespace qtorus {

using i64 = std::int64_t;
using i128 = __int128;
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// a mod m reduced into [0, m), m > 0.
inline i64 mod_reduce(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline i64 narrow_i128(i128 v) {
  if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
    throw InternalError("integer matrix entry exceeds the supported 64-bit range");
  return static_cast<i64>(v);
}

// Exact integer square root, or -1 if x is not a perfect square.
inline i64 exact_isqrt(i64 x) {
  if (x < 0) return -1;
  i64 r = static_cast<i64>(std::sqrt(static_cast<double>(x)));
  while (r > 0 && r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r * r == x ? r : -1;
}

inline std::string rational_to_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

inline Rational rational_from_string(const std::string& s) {
  try {
    return Rational(s);
  } catch (const std::exception&) {
    throw ConfigError("malformed rational literal: \"" + s + "\"");
  }
}

// Dense row-major integer matrix. Small and value-semantic; everything in
// this library is desk scale (n <= 8 or so).
class IntMat {
 public:
  using value_type = i64;

  IntMat() = default;
  IntMat(i64 rows, i64 cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows * cols), 0) {}

  static IntMat identity(i64 n) {
    IntMat m(n, n);
    for (i64 i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMat from_rows(const std::vector<std::vector<i64>>& rows) {
    i64 r = static_cast<i64>(rows.size());
    i64 c = r == 0 ? 0 : static_cast<i64>(rows[0].size());
    IntMat m(r, c);
    for (i64 i = 0; i < r; ++i) {
      if (static_cast<i64>(rows[static_cast<size_t>(i)].size()) != c)
        throw ConfigError("ragged matrix rows");
      for (i64 j = 0; j < c; ++j) m(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return m;
  }

  std::vector<std::vector<i64>> to_rows() const {
    std::vector<std::vector<i64>> out(static_cast<size_t>(rows_));
    for (i64 i = 0; i < rows_; ++i) {
      out[static_cast<size_t>(i)].assign(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
    }
    return out;
  }

  i64 rows() const { return rows_; }
  i64 cols() const { return cols_; }

  i64& operator()(i64 i, i64 j) { return a_[static_cast<size_t>(i * cols_ + j)]; }
  i64 operator()(i64 i, i64 j) const { return a_[static_cast<size_t>(i * cols_ + j)]; }

  std::vector<i64> row(i64 i) const {
    return {a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_};
  }

  void swap_rows(i64 i, i64 j) {
    if (i == j) return;
    for (i64 k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }
  void swap_cols(i64 i, i64 j) {
    if (i == j) return;
    for (i64 k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
  }
  // row i -= q * row j
  void row_axpy(i64 i, i64 j, i64 q) {
    if (q == 0) return;
    for (i64 k = 0; k < cols_; ++k)
      (*this)(i, k) = narrow_i128(static_cast<i128>((*this)(i, k)) - static_cast<i128>(q) * (*this)(j, k));
  }
  // col i -= q * col j
  void col_axpy(i64 i, i64 j, i64 q) {
    if (q == 0) return;
    for (i64 k = 0; k < rows_; ++k)
      (*this)(k, i) = narrow_i128(static_cast<i128>((*this)(k, i)) - static_cast<i128>(q) * (*this)(k, j));
  }
  void negate_row(i64 i) {
    for (i64 k = 0; k < cols_; ++k) (*this)(i, k) = -(*this)(i, k);
  }
  void negate_col(i64 j) {
    for (i64 k = 0; k < rows_; ++k) (*this)(k, j) = -(*this)(k, j);
  }

  bool operator==(const IntMat&) const = default;

 private:
  i64 rows_ = 0, cols_ = 0;
  std::vector<i64> a_;
};

inline IntMat operator*(const IntMat& a, const IntMat& b) {
  if (a.cols() != b.rows()) throw InternalError("matrix product shape mismatch");
  IntMat c(a.rows(), b.cols());
  for (i64 i = 0; i < a.rows(); ++i)
    for (i64 j = 0; j < b.cols(); ++j) {
      i128 acc = 0;
      for (i64 k = 0; k < a.cols(); ++k) acc += static_cast<i128>(a(i, k)) * b(k, j);
      c(i, j) = narrow_i128(acc);
    }
  return c;
}

// Arbitrary-precision dense matrix, same interface as IntMat. The lattice
// normal forms run on this: the unimodular transforms they accumulate can
// exceed 64 bits even for small inputs.
class BigMat {
 public:
  using value_type = BigInt;

  BigMat() = default;
  BigMat(i64 rows, i64 cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows * cols)) {}

  static BigMat identity(i64 n) {
    BigMat m(n, n);
    for (i64 i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static BigMat from(const IntMat& m) {
    BigMat b(m.rows(), m.cols());
    for (i64 i = 0; i < m.rows(); ++i)
      for (i64 j = 0; j < m.cols(); ++j) b(i, j) = m(i, j);
    return b;
  }

  // Entries must already be in 64-bit range; throws otherwise.
  IntMat narrow() const {
    IntMat m(rows_, cols_);
    for (i64 i = 0; i < rows_; ++i)
      for (i64 j = 0; j < cols_; ++j) {
        const BigInt& v = (*this)(i, j);
        if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
          throw InternalError("matrix entry exceeds the supported 64-bit range");
        m(i, j) = static_cast<i64>(v);
      }
    return m;
  }

  i64 rows() const { return rows_; }
  i64 cols() const { return cols_; }

  BigInt& operator()(i64 i, i64 j) { return a_[static_cast<size_t>(i * cols_ + j)]; }
  const BigInt& operator()(i64 i, i64 j) const { return a_[static_cast<size_t>(i * cols_ + j)]; }

  void swap_rows(i64 i, i64 j) {
    if (i == j) return;
    for (i64 k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }
  void swap_cols(i64 i, i64 j) {
    if (i == j) return;
    for (i64 k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
  }
  void row_axpy(i64 i, i64 j, const BigInt& q) {
    if (q == 0) return;
    for (i64 k = 0; k < cols_; ++k) (*this)(i, k) -= q * (*this)(j, k);
  }
  void col_axpy(i64 i, i64 j, const BigInt& q) {
    if (q == 0) return;
    for (i64 k = 0; k < rows_; ++k) (*this)(k, i) -= q * (*this)(k, j);
  }
  void negate_row(i64 i) {
    for (i64 k = 0; k < cols_; ++k) (*this)(i, k) = -(*this)(i, k);
  }

  bool operator==(const BigMat&) const = default;

 private:
  i64 rows_ = 0, cols_ = 0;
  std::vector<BigInt> a_;
};

inline BigMat operator*(const BigMat& a, const BigMat& b) {
  if (a.cols() != b.rows()) throw InternalError("matrix product shape mismatch");
  BigMat c(a.rows(), b.cols());
  for (i64 i = 0; i < a.rows(); ++i)
    for (i64 k = 0; k < a.cols(); ++k) {
      const BigInt& v = a(i, k);
      if (v == 0) continue;
      for (i64 j = 0; j < b.cols(); ++j) c(i, j) += v * b(k, j);
    }
  return c;
}

// Exact determinant via fraction-free Bareiss elimination.
inline BigInt determinant(const BigMat& m) {
  if (m.rows() != m.cols()) throw InternalError("determinant of non-square matrix");
  i64 n = m.rows();
  if (n == 0) return 1;
  BigMat a = m;
  BigInt sign = 1, prev = 1;
  for (i64 k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      i64 piv = -1;
      for (i64 i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      a.swap_rows(k, piv);
      sign = -sign;
    }
    for (i64 i = k + 1; i < n; ++i)
      for (i64 j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

inline BigInt determinant(const IntMat& m) { return determinant(BigMat::from(m)); }

}  // namespace qtorus
