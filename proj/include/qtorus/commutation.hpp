#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "qtorus/numeric.hpp"

namespace qtorus {

// Exponent of a (Laurent) monomial x^s = x_1^{s_1} ... x_n^{s_n}.
using ExponentVector = std::vector<i64>;

inline i64 total_degree(const ExponentVector& s) {
  i64 d = 0;
  for (i64 v : s) d += v;
  return d;
}

inline ExponentVector unit_vector(i64 n, i64 i) {
  ExponentVector e(static_cast<size_t>(n), 0);
  e[static_cast<size_t>(i)] = 1;
  return e;
}

// Graded-lexicographic order: by total degree, then lexicographic.
struct GrlexLess {
  bool operator()(const ExponentVector& a, const ExponentVector& b) const {
    i64 da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

// Validated presentation (n, ell, H) of the commutation matrix
// q_ij = epsilon^{h_ij}: zero diagonal and antisymmetry mod ell.
class CommutationData {
 public:
  static CommutationData validate(i64 n, i64 ell, IntMat h,
                                  std::vector<std::string>* warnings = nullptr) {
    if (n < 1) throw ConfigError("n must be positive");
    if (ell < 1) throw ConfigError("ell must be positive");
    if (h.rows() != n || h.cols() != n)
      throw ConfigError("h must be an n x n integer matrix");
    for (i64 i = 0; i < n; ++i)
      for (i64 j = 0; j < n; ++j) h(i, j) = mod_reduce(h(i, j), ell);
    for (i64 i = 0; i < n; ++i)
      if (h(i, i) != 0)
        throw ConfigError("invalid commutation matrix: q_" + std::to_string(i + 1) +
                          std::to_string(i + 1) + " != 1 (h[" + std::to_string(i + 1) + "][" +
                          std::to_string(i + 1) + "] is nonzero mod ell)");
    for (i64 i = 0; i < n; ++i)
      for (i64 j = i + 1; j < n; ++j)
        if ((h(i, j) + h(j, i)) % ell != 0)
          throw ConfigError("invalid commutation matrix: q_" + std::to_string(i + 1) +
                            std::to_string(j + 1) + " * q_" + std::to_string(j + 1) +
                            std::to_string(i + 1) + " != 1 (h[" + std::to_string(i + 1) + "][" +
                            std::to_string(j + 1) + "] + h[" + std::to_string(j + 1) + "][" +
                            std::to_string(i + 1) + "] is nonzero mod ell)");
    i64 g = ell;
    for (i64 i = 0; i < n; ++i)
      for (i64 j = 0; j < n; ++j) g = std::gcd(g, h(i, j));
    if (g > 1 && warnings)
      warnings->push_back("non-minimal presentation: gcd(ell, h entries) = " + std::to_string(g) +
                          "; the data is equivalent to (ell/" + std::to_string(g) + ", h/" +
                          std::to_string(g) + ")");
    return CommutationData(n, ell, std::move(h));
  }

  i64 n() const { return n_; }
  i64 ell() const { return ell_; }
  const IntMat& h() const { return h_; }
  i64 h(i64 i, i64 j) const { return h_(i, j); }

  bool operator==(const CommutationData&) const = default;

 private:
  CommutationData(i64 n, i64 ell, IntMat h) : n_(n), ell_(ell), h_(std::move(h)) {}

  i64 n_ = 0, ell_ = 1;
  IntMat h_;
};

namespace detail {

inline void check_dim(const CommutationData& cd, const ExponentVector& s) {
  if (static_cast<i64>(s.size()) != cd.n())
    throw DomainError("exponent vector length does not match n");
}

}  // namespace detail

// Exponent e with sigma(s, t) = epsilon^e: e = sum_{i,j} h_ij s_i t_j mod ell.
// The bicharacter controls monomial commutation: x^s x^t = sigma(s,t) x^t x^s.
inline i64 sigma_exponent(const CommutationData& cd, const ExponentVector& s,
                          const ExponentVector& t) {
  detail::check_dim(cd, s);
  detail::check_dim(cd, t);
  i64 ell = cd.ell();
  i128 acc = 0;
  for (i64 i = 0; i < cd.n(); ++i) {
    i64 si = mod_reduce(s[static_cast<size_t>(i)], ell);
    if (si == 0) continue;
    for (i64 j = 0; j < cd.n(); ++j) {
      i64 tj = mod_reduce(t[static_cast<size_t>(j)], ell);
      acc += static_cast<i128>(cd.h(i, j)) * si % ell * tj;
    }
  }
  return static_cast<i64>(((acc % ell) + ell) % ell);
}

// Exponent of the scalar produced by normal ordering x^s * x^t into
// epsilon^e * x^{s+t}: e = sum_{i>j} h_ij s_i t_j mod ell. Valid for
// arbitrary integer exponents (the swap rule extends to inverses).
inline i64 ordering_exponent(const CommutationData& cd, const ExponentVector& s,
                             const ExponentVector& t) {
  detail::check_dim(cd, s);
  detail::check_dim(cd, t);
  i64 ell = cd.ell();
  i128 acc = 0;
  for (i64 i = 1; i < cd.n(); ++i) {
    i64 si = mod_reduce(s[static_cast<size_t>(i)], ell);
    if (si == 0) continue;
    for (i64 j = 0; j < i; ++j) {
      i64 tj = mod_reduce(t[static_cast<size_t>(j)], ell);
      acc += static_cast<i128>(cd.h(i, j)) * si % ell * tj;
    }
  }
  return static_cast<i64>(((acc % ell) + ell) % ell);
}

}  // namespace qtorus
