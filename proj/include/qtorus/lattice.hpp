#pragma once

#include <numeric>
#include <optional>
#include <vector>

#include "qtorus/commutation.hpp"
#include "qtorus/numeric.hpp"

namespace qtorus {

// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... | d_n >= 0.
// Arbitrary-precision entries: the accumulated transforms outgrow 64 bits
// even for small inputs.
struct SNFResult {
  BigMat u, d, v;
};

namespace detail {

// Floor division, divisor > 0.
template <typename T>
T floor_div(const T& a, const T& b) {
  T q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

struct PivotPos {
  i64 row = -1, col = -1;
};

template <typename Mat>
PivotPos find_smallest_pivot(const Mat& a, i64 k) {
  PivotPos best;
  typename Mat::value_type best_abs{};
  for (i64 i = k; i < a.rows(); ++i)
    for (i64 j = k; j < a.cols(); ++j) {
      typename Mat::value_type v = a(i, j);
      if (v < 0) v = -v;
      if (v != 0 && (best.row < 0 || v < best_abs)) {
        best = {i, j};
        best_abs = std::move(v);
      }
    }
  return best;
}

}  // namespace detail

// Smith normal form by repeated pivoting on the smallest nonzero entry
// (rows swapped before columns, ties at the lowest index), division steps
// until the pivot clears its row and column, and the usual row-addition
// trick to enforce the divisibility chain.
inline SNFResult smith_normal_form(const IntMat& m) {
  if (m.rows() != m.cols()) throw ConfigError("smith_normal_form expects a square matrix");
  i64 n = m.rows();
  BigMat a = BigMat::from(m);
  BigMat u = BigMat::identity(n);
  BigMat v = BigMat::identity(n);
  for (i64 k = 0; k < n; ++k) {
    for (;;) {
      auto piv = detail::find_smallest_pivot(a, k);
      if (piv.row < 0) {
        k = n;  // remaining block is zero
        break;
      }
      a.swap_rows(k, piv.row);
      u.swap_rows(k, piv.row);
      a.swap_cols(k, piv.col);
      v.swap_cols(k, piv.col);
      bool dirty = false;
      for (i64 i = k + 1; i < n; ++i) {
        BigInt q = a(i, k) / a(k, k);
        a.row_axpy(i, k, q);
        u.row_axpy(i, k, q);
        if (a(i, k) != 0) dirty = true;
      }
      for (i64 j = k + 1; j < n; ++j) {
        BigInt q = a(k, j) / a(k, k);
        a.col_axpy(j, k, q);
        v.col_axpy(j, k, q);
        if (a(k, j) != 0) dirty = true;
      }
      if (dirty) continue;
      bool nondivisible = false;
      for (i64 i = k + 1; i < n && !nondivisible; ++i)
        for (i64 j = k + 1; j < n && !nondivisible; ++j)
          if (a(i, j) % a(k, k) != 0) {
            a.row_axpy(k, i, BigInt(-1));  // row k += row i
            u.row_axpy(k, i, BigInt(-1));
            nondivisible = true;
          }
      if (!nondivisible) break;
    }
    if (k >= n) break;
  }
  for (i64 k = 0; k < n; ++k)
    if (a(k, k) < 0) {
      a.negate_row(k);
      u.negate_row(k);
    }
  return {std::move(u), std::move(a), std::move(v)};
}

// Row Hermite normal form: staircase with positive pivots, entries above
// each pivot reduced into [0, pivot).
template <typename Mat>
Mat row_hermite_normal_form(Mat a) {
  i64 rows = a.rows(), cols = a.cols();
  i64 r = 0;
  for (i64 j = 0; j < cols && r < rows; ++j) {
    for (;;) {
      i64 best = -1;
      typename Mat::value_type best_abs{};
      for (i64 i = r; i < rows; ++i) {
        typename Mat::value_type v = a(i, j);
        if (v < 0) v = -v;
        if (v != 0 && (best < 0 || v < best_abs)) {
          best = i;
          best_abs = std::move(v);
        }
      }
      if (best < 0) break;
      a.swap_rows(r, best);
      bool clear = true;
      for (i64 i = r + 1; i < rows; ++i) {
        a.row_axpy(i, r, a(i, j) / a(r, j));
        if (a(i, j) != 0) clear = false;
      }
      if (clear) break;
    }
    if (a(r, j) == 0) continue;
    if (a(r, j) < 0) a.negate_row(r);
    for (i64 i = 0; i < r; ++i) a.row_axpy(i, r, detail::floor_div(a(i, j), a(r, j)));
    ++r;
  }
  return a;
}

// True iff H * s = 0 mod ell, i.e. s is the exponent of a central monomial.
inline bool in_kernel(const CommutationData& cd, const ExponentVector& s) {
  detail::check_dim(cd, s);
  for (i64 i = 0; i < cd.n(); ++i) {
    i128 acc = 0;
    for (i64 j = 0; j < cd.n(); ++j)
      acc += static_cast<i128>(cd.h(i, j)) * mod_reduce(s[static_cast<size_t>(j)], cd.ell());
    if (acc % cd.ell() != 0) return false;
  }
  return true;
}

// Z-basis of the central sublattice S = { s : H s = 0 mod ell }, rows in HNF.
class LatticeBasis {
 public:
  explicit LatticeBasis(IntMat rows) : rows_(std::move(rows)) {}

  const IntMat& rows() const { return rows_; }
  i64 n() const { return rows_.rows(); }

  // Integer coordinates y with s = sum y_i * rows_i, if they exist.
  // Back-substitution along the staircase; rows_ is full rank here.
  std::optional<std::vector<i64>> solve(const ExponentVector& s) const {
    i64 n = rows_.rows();
    if (static_cast<i64>(s.size()) != rows_.cols())
      throw DomainError("exponent vector length does not match the basis");
    std::vector<i64> y(static_cast<size_t>(n), 0);
    for (i64 j = 0; j < n; ++j) {
      i64 rem = s[static_cast<size_t>(j)];
      for (i64 i = 0; i < j; ++i) rem -= y[static_cast<size_t>(i)] * rows_(i, j);
      i64 p = rows_(j, j);
      if (p == 0) return std::nullopt;
      if (rem % p != 0) return std::nullopt;
      y[static_cast<size_t>(j)] = rem / p;
    }
    return y;
  }

  bool contains(const ExponentVector& s) const { return solve(s).has_value(); }

  // [Z^n : S], the absolute determinant; the staircase makes it the
  // product of the pivots.
  i64 index() const {
    i64 h = 1;
    for (i64 i = 0; i < rows_.rows(); ++i) h *= rows_(i, i);
    return h < 0 ? -h : h;
  }

  bool operator==(const LatticeBasis&) const = default;

 private:
  IntMat rows_;
};

namespace detail {

// ell / gcd(d_i, ell) for a non-negative arbitrary-precision d_i.
inline i64 coordinate_modulus(const BigInt& di, i64 ell) {
  i64 r = static_cast<i64>(di % ell);
  return ell / (r == 0 ? ell : std::gcd(r, ell));
}

}  // namespace detail

// HNF basis of S via the Smith form of H: with U H V = D, the coordinate
// moduli are ell / gcd(d_i, ell) and S is spanned by those multiples of
// the columns of V. The canonical basis always has entries below ell
// (S contains ell Z^n), so it narrows back to machine integers.
inline LatticeBasis kernel_lattice(const CommutationData& cd) {
  i64 n = cd.n(), ell = cd.ell();
  SNFResult snf = smith_normal_form(cd.h());
  BigMat basis(n, n);
  for (i64 i = 0; i < n; ++i) {
    i64 mi = detail::coordinate_modulus(snf.d(i, i), ell);
    for (i64 j = 0; j < n; ++j) basis(i, j) = mi * snf.v(j, i);
  }
  return LatticeBasis(row_hermite_normal_form(std::move(basis)).narrow());
}

// Cardinality of the image of H : Z^n -> (Z/ell)^n.
inline i64 image_cardinality(const CommutationData& cd) {
  SNFResult snf = smith_normal_form(cd.h());
  i128 h = 1;
  for (i64 i = 0; i < cd.n(); ++i) {
    h *= detail::coordinate_modulus(snf.d(i, i), cd.ell());
    if (h > static_cast<i128>(1) << 62)
      throw DomainError("image cardinality overflows the supported range");
  }
  return static_cast<i64>(h);
}

// PI degree sqrt(h); the alternating structure of H makes h a perfect square.
inline i64 pi_degree(const CommutationData& cd) {
  i64 h = image_cardinality(cd);
  i64 d = exact_isqrt(h);
  if (d < 0)
    throw InternalError("image cardinality " + std::to_string(h) +
                        " is not a perfect square; commutation data is inconsistent");
  return d;
}

// lambda_i = least positive m with m * e_i in S = ell / gcd(ell, gcd_j h_ji).
inline std::vector<i64> minimal_axis_multiples(const CommutationData& cd) {
  std::vector<i64> lambdas;
  lambdas.reserve(static_cast<size_t>(cd.n()));
  for (i64 i = 0; i < cd.n(); ++i) {
    i64 g = cd.ell();
    for (i64 j = 0; j < cd.n(); ++j) g = std::gcd(g, cd.h(j, i));
    lambdas.push_back(cd.ell() / g);
  }
  return lambdas;
}

struct DiagonalVerdict {
  bool is_positive_diagonal = false;
  std::vector<i64> lambdas;
  std::optional<ExponentVector> witness;  // an HNF row of S outside diag(lambda) Z^n

  bool operator==(const DiagonalVerdict&) const = default;
};

// S always contains diag(lambda) Z^n; they coincide (and S then has a
// positive diagonal basis) exactly when the indices match.
inline DiagonalVerdict positive_diagonal_decision(const CommutationData& cd) {
  LatticeBasis basis = kernel_lattice(cd);
  std::vector<i64> lambdas = minimal_axis_multiples(cd);
  i128 diag_index = 1;
  for (i64 l : lambdas) diag_index *= l;
  DiagonalVerdict verdict;
  verdict.lambdas = std::move(lambdas);
  if (diag_index == static_cast<i128>(basis.index())) {
    verdict.is_positive_diagonal = true;
    return verdict;
  }
  for (i64 i = 0; i < basis.n(); ++i) {
    ExponentVector row = basis.rows().row(i);
    for (i64 j = 0; j < basis.n(); ++j)
      if (row[static_cast<size_t>(j)] % verdict.lambdas[static_cast<size_t>(j)] != 0) {
        verdict.witness = row;
        return verdict;
      }
  }
  throw InternalError("index mismatch without a non-diagonal basis row");
}

}  // namespace qtorus
