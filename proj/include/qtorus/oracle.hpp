#pragma once

#include <cstdlib>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "qtorus/commutation.hpp"

namespace qtorus {

// Deliberately naive enumeration-based verifiers. They share only the
// commutation primitives with the main path, never the lattice algorithms.

inline i64 oracle_budget() {
  if (const char* env = std::getenv("QTORUS_ORACLE_BUDGET")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<i64>(v);
  }
  return 1000000;
}

namespace detail {

inline void check_budget(i128 points, i64 budget, const std::string& what) {
  if (points > static_cast<i128>(budget))
    throw BudgetError("oracle budget exceeded: " + what + " needs more than " +
                      std::to_string(budget) + " evaluations (set QTORUS_ORACLE_BUDGET to raise)");
}

// Odometer over the box prod [lo_i, hi_i]; returns false when exhausted.
inline bool next_point(ExponentVector& s, const ExponentVector& lo, const ExponentVector& hi) {
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] < hi[i]) {
      ++s[i];
      return true;
    }
    s[i] = lo[i];
  }
  return false;
}

inline bool brute_in_center(const CommutationData& cd, const ExponentVector& s) {
  for (i64 j = 0; j < cd.n(); ++j)
    if (sigma_exponent(cd, s, unit_vector(cd.n(), j)) != 0) return false;
  return true;
}

}  // namespace detail

// |image of H| by enumerating all of (Z/ell)^n.
inline i64 brute_image_cardinality(const CommutationData& cd, i64 budget = oracle_budget()) {
  i64 n = cd.n(), ell = cd.ell();
  i128 points = 1;
  for (i64 i = 0; i < n; ++i) points *= ell;
  detail::check_budget(points, budget, "image enumeration over (Z/ell)^n");
  ExponentVector lo(static_cast<size_t>(n), 0), hi(static_cast<size_t>(n), ell - 1);
  ExponentVector s = lo;
  std::unordered_set<unsigned long long> images;
  for (;;) {
    unsigned long long key = 0;
    for (i64 i = 0; i < n; ++i) {
      i64 coord = 0;
      for (i64 j = 0; j < n; ++j) coord += cd.h(i, j) * s[static_cast<size_t>(j)];
      key = key * static_cast<unsigned long long>(ell) + static_cast<unsigned long long>(mod_reduce(coord, ell));
    }
    images.insert(key);
    if (!detail::next_point(s, lo, hi)) break;
  }
  return static_cast<i64>(images.size());
}

// All exponents in [-r, r]^n whose monomials commute with every generator.
inline std::set<ExponentVector> brute_central_support(const CommutationData& cd, i64 box_radius,
                                                      i64 budget = oracle_budget()) {
  if (box_radius < 1) throw ConfigError("box radius must be positive");
  i64 n = cd.n();
  i128 points = 1;
  for (i64 i = 0; i < n; ++i) points *= 2 * box_radius + 1;
  detail::check_budget(points, budget, "central support box enumeration");
  ExponentVector lo(static_cast<size_t>(n), -box_radius), hi(static_cast<size_t>(n), box_radius);
  ExponentVector s = lo;
  std::set<ExponentVector> support;
  for (;;) {
    if (detail::brute_in_center(cd, s)) support.insert(s);
    if (!detail::next_point(s, lo, hi)) break;
  }
  return support;
}

// True iff the diagonal sublattice generated by the minimal axis multiples
// is all of S; checked by scanning its fundamental box for other points
// of S. The multiples themselves are found by brute search.
inline bool brute_diagonal_check(const CommutationData& cd, i64 budget = oracle_budget()) {
  i64 n = cd.n(), ell = cd.ell();
  ExponentVector lambdas(static_cast<size_t>(n), 1);
  for (i64 i = 0; i < n; ++i) {
    for (i64 m = 1; m <= ell; ++m) {
      ExponentVector cand(static_cast<size_t>(n), 0);
      cand[static_cast<size_t>(i)] = m;
      if (detail::brute_in_center(cd, cand)) {
        lambdas[static_cast<size_t>(i)] = m;
        break;
      }
    }
  }
  i128 points = 1;
  for (i64 l : lambdas) points *= l;
  detail::check_budget(points, budget, "diagonal fundamental box enumeration");
  ExponentVector lo(static_cast<size_t>(n), 0);
  ExponentVector hi(static_cast<size_t>(n));
  for (i64 i = 0; i < n; ++i) hi[static_cast<size_t>(i)] = lambdas[static_cast<size_t>(i)] - 1;
  ExponentVector s = lo;
  for (;;) {
    // any nonzero box point lying in S witnesses S != diag(lambda) Z^n
    if (total_degree(s) != 0 && detail::brute_in_center(cd, s)) return false;
    if (!detail::next_point(s, lo, hi)) break;
  }
  return true;
}

}  // namespace qtorus
