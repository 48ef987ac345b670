#pragma once

#include <map>
#include <vector>

#include "qtorus/numeric.hpp"

namespace qtorus {

// Integer polynomial, little-endian coefficients, no trailing zeros.
using IntPoly = std::vector<i64>;

namespace detail {

inline void ipoly_trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division num / den for monic den; throws if the division is inexact.
inline IntPoly ipoly_exact_div(IntPoly num, const IntPoly& den) {
  if (den.empty() || den.back() != 1) throw InternalError("ipoly_exact_div: divisor not monic");
  i64 dn = static_cast<i64>(num.size()) - 1;
  i64 dd = static_cast<i64>(den.size()) - 1;
  if (dn < dd) throw InternalError("ipoly_exact_div: degree underflow");
  IntPoly quot(static_cast<size_t>(dn - dd + 1), 0);
  for (i64 k = dn - dd; k >= 0; --k) {
    i64 c = num[static_cast<size_t>(k + dd)];
    quot[static_cast<size_t>(k)] = c;
    if (c == 0) continue;
    for (i64 j = 0; j <= dd; ++j) num[static_cast<size_t>(k + j)] -= c * den[static_cast<size_t>(j)];
  }
  for (i64 v : num)
    if (v != 0) throw InternalError("ipoly_exact_div: nonzero remainder");
  return quot;
}

}  // namespace detail

// The ell-th cyclotomic polynomial, computed by exact division of x^ell - 1
// by the product of the lower cyclotomic polynomials over proper divisors.
inline IntPoly cyclotomic_polynomial(i64 ell) {
  if (ell < 1) throw ConfigError("cyclotomic_polynomial: order must be positive");
  std::map<i64, IntPoly> table;
  for (i64 m = 1; m <= ell; ++m) {
    if (ell % m != 0) continue;
    IntPoly num(static_cast<size_t>(m) + 1, 0);
    num[0] = -1;
    num[static_cast<size_t>(m)] = 1;  // x^m - 1
    for (auto& [d, phi] : table)
      if (m % d == 0) num = detail::ipoly_exact_div(num, phi);
    table[m] = num;
  }
  return table[ell];
}

inline i64 cyclotomic_degree(const IntPoly& phi) { return static_cast<i64>(phi.size()) - 1; }

namespace detail {

// Rational polynomial helpers for arithmetic in Q[x] / (phi), phi monic over Z.
using QPoly = std::vector<Rational>;

inline void qpoly_trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly c(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  qpoly_trim(c);
  return c;
}

inline QPoly qpoly_sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  qpoly_trim(a);
  return a;
}

inline QPoly qpoly_reduce(QPoly a, const IntPoly& phi) {
  i64 d = cyclotomic_degree(phi);
  while (static_cast<i64>(a.size()) - 1 >= d) {
    Rational c = a.back();
    size_t k = a.size() - 1 - static_cast<size_t>(d);
    if (c != 0)
      for (i64 j = 0; j <= d; ++j) a[k + static_cast<size_t>(j)] -= c * phi[static_cast<size_t>(j)];
    a.pop_back();
    qpoly_trim(a);
  }
  return a;
}

// Quotient of a by b in Q[x], b nonzero.
inline QPoly qpoly_div(QPoly a, const QPoly& b) {
  QPoly q;
  i64 db = static_cast<i64>(b.size()) - 1;
  while (static_cast<i64>(a.size()) - 1 >= db && !a.empty()) {
    i64 k = static_cast<i64>(a.size()) - 1 - db;
    Rational c = a.back() / b.back();
    if (static_cast<i64>(q.size()) <= k) q.resize(static_cast<size_t>(k) + 1);
    q[static_cast<size_t>(k)] = c;
    for (i64 j = 0; j <= db; ++j)
      a[static_cast<size_t>(k + j)] -= c * b[static_cast<size_t>(j)];
    a.pop_back();
    qpoly_trim(a);
  }
  return q;
}

// Inverse of a modulo phi via the extended Euclidean algorithm. phi is
// irreducible over Q, so any nonzero residue is invertible.
inline QPoly qpoly_inverse_mod(const QPoly& a, const IntPoly& phi) {
  if (a.empty()) throw DomainError("division by zero");
  QPoly r0(phi.begin(), phi.end());
  QPoly r1 = a;
  QPoly t0, t1{Rational(1)};
  while (!r1.empty()) {
    QPoly q = qpoly_div(r0, r1);
    QPoly r2 = qpoly_sub(r0, qpoly_mul(q, r1));
    QPoly t2 = qpoly_sub(t0, qpoly_mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.size() != 1) throw InternalError("qpoly_inverse_mod: gcd is not a unit");
  Rational c = r0[0];
  for (auto& v : t0) v /= c;
  return qpoly_reduce(std::move(t0), phi);
}

}  // namespace detail

}  // namespace qtorus
