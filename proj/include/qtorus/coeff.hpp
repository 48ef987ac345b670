#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qtorus/cyclotomic.hpp"
#include "qtorus/numeric.hpp"

namespace qtorus {

enum class FieldKind { cyclotomic, prime };

// Coefficient field specification: Q(zeta_ell), or F_p with ell | p-1.
struct FieldSpec {
  FieldKind kind = FieldKind::cyclotomic;
  i64 ell = 1;
  i64 p = 0;  // prime mode only

  bool operator==(const FieldSpec&) const = default;
};

// A field element. Prime mode: residue in [0, p). Cyclotomic mode: the
// phi(ell) coordinates of the element in the power basis 1, z, ..., z^{phi-1}
// of Q(zeta_ell), stored without trailing zeros.
struct Scalar {
  std::variant<i64, std::vector<Rational>> rep;

  bool operator==(const Scalar&) const = default;
};

namespace detail {

inline i64 pow_mod(i64 base, i64 exp, i64 p) {
  i64 r = 1;
  base = mod_reduce(base, p);
  while (exp > 0) {
    if (exp & 1) r = static_cast<i64>(static_cast<i128>(r) * base % p);
    base = static_cast<i64>(static_cast<i128>(base) * base % p);
    exp >>= 1;
  }
  return r;
}

inline bool is_prime(i64 p) {
  if (p < 2) return false;
  for (i64 d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline std::vector<i64> prime_factors(i64 m) {
  std::vector<i64> out;
  for (i64 d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      out.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

}  // namespace detail

// Arithmetic context for the coefficient field. Immutable after
// construction; all operations are pure.
class CoeffField {
 public:
  explicit CoeffField(FieldSpec spec) : spec_(spec) {
    if (spec_.ell < 1) throw ConfigError("field spec: ell must be positive");
    if (spec_.kind == FieldKind::cyclotomic) {
      phi_ = cyclotomic_polynomial(spec_.ell);
      degree_ = cyclotomic_degree(phi_);
    } else {
      if (!detail::is_prime(spec_.p)) throw ConfigError("field spec: p is not prime");
      if ((spec_.p - 1) % spec_.ell != 0) {
        if (spec_.ell % spec_.p == 0)
          throw ConfigError(
              "field spec: the field characteristic p divides ell, so an order-ell root of "
              "unity degenerates; choose p with ell | p-1");
        throw ConfigError("field spec: ell does not divide p-1, no primitive ell-th root in F_p");
      }
      primitive_root_ = smallest_primitive_root(spec_.p);
      epsilon_ = detail::pow_mod(primitive_root_, (spec_.p - 1) / spec_.ell, spec_.p);
    }
    root_table_.reserve(static_cast<size_t>(spec_.ell));
    for (i64 e = 0; e < spec_.ell; ++e) root_table_.push_back(compute_root_power(e));
  }

  const FieldSpec& spec() const { return spec_; }
  i64 ell() const { return spec_.ell; }
  // Dimension of the field over Q in cyclotomic mode; phi(ell).
  i64 phi_degree() const { return degree_; }
  i64 primitive_root() const { return primitive_root_; }

  Scalar zero() const {
    if (spec_.kind == FieldKind::prime) return Scalar{i64{0}};
    return Scalar{std::vector<Rational>{}};
  }
  Scalar one() const { return from_int(1); }

  Scalar from_int(i64 v) const {
    if (spec_.kind == FieldKind::prime) return Scalar{mod_reduce(v, spec_.p)};
    if (v == 0) return Scalar{std::vector<Rational>{}};
    return Scalar{std::vector<Rational>{Rational(v)}};
  }

  Scalar from_rational(const Rational& v) const {
    if (spec_.kind == FieldKind::prime) throw ConfigError("prime field scalars are residues, not rationals");
    if (v == 0) return Scalar{std::vector<Rational>{}};
    return Scalar{std::vector<Rational>{v}};
  }

  // epsilon^e; depends only on e mod ell.
  Scalar root_power(i64 e) const { return root_table_[static_cast<size_t>(mod_reduce(e, spec_.ell))]; }

  bool is_zero(const Scalar& a) const {
    if (spec_.kind == FieldKind::prime) return std::get<i64>(a.rep) == 0;
    return std::get<std::vector<Rational>>(a.rep).empty();
  }

  Scalar add(const Scalar& a, const Scalar& b) const {
    if (spec_.kind == FieldKind::prime)
      return Scalar{mod_reduce(std::get<i64>(a.rep) + std::get<i64>(b.rep), spec_.p)};
    auto c = std::get<std::vector<Rational>>(a.rep);
    const auto& d = std::get<std::vector<Rational>>(b.rep);
    if (c.size() < d.size()) c.resize(d.size());
    for (size_t i = 0; i < d.size(); ++i) c[i] += d[i];
    detail::qpoly_trim(c);
    return Scalar{std::move(c)};
  }

  Scalar neg(const Scalar& a) const {
    if (spec_.kind == FieldKind::prime) {
      i64 v = std::get<i64>(a.rep);
      return Scalar{v == 0 ? 0 : spec_.p - v};
    }
    auto c = std::get<std::vector<Rational>>(a.rep);
    for (auto& v : c) v = -v;
    return Scalar{std::move(c)};
  }

  Scalar sub(const Scalar& a, const Scalar& b) const { return add(a, neg(b)); }

  Scalar mul(const Scalar& a, const Scalar& b) const {
    if (spec_.kind == FieldKind::prime)
      return Scalar{static_cast<i64>(static_cast<i128>(std::get<i64>(a.rep)) * std::get<i64>(b.rep) % spec_.p)};
    auto prod = detail::qpoly_mul(std::get<std::vector<Rational>>(a.rep),
                                  std::get<std::vector<Rational>>(b.rep));
    return Scalar{detail::qpoly_reduce(std::move(prod), phi_)};
  }

  Scalar inv(const Scalar& a) const {
    if (is_zero(a)) throw DomainError("division by zero in the coefficient field");
    if (spec_.kind == FieldKind::prime)
      return Scalar{detail::pow_mod(std::get<i64>(a.rep), spec_.p - 2, spec_.p)};
    return Scalar{detail::qpoly_inverse_mod(std::get<std::vector<Rational>>(a.rep), phi_)};
  }

  Scalar pow(Scalar a, i64 e) const {
    if (e < 0) {
      a = inv(a);
      e = -e;
    }
    Scalar r = one();
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  bool eq(const Scalar& a, const Scalar& b) const { return a.rep == b.rep; }

  // Serialized form per the wire format: prime mode a decimal residue
  // string, cyclotomic mode phi(ell) rational strings (power basis).
  std::vector<std::string> serialize(const Scalar& a) const {
    if (spec_.kind == FieldKind::prime) return {std::to_string(std::get<i64>(a.rep))};
    const auto& c = std::get<std::vector<Rational>>(a.rep);
    std::vector<std::string> out;
    out.reserve(static_cast<size_t>(degree_));
    for (i64 i = 0; i < degree_; ++i)
      out.push_back(rational_to_string(i < static_cast<i64>(c.size()) ? c[static_cast<size_t>(i)]
                                                                      : Rational(0)));
    return out;
  }

  Scalar deserialize(const std::vector<std::string>& parts) const {
    if (spec_.kind == FieldKind::prime) {
      if (parts.size() != 1) throw ConfigError("prime scalar must be a single residue string");
      i64 v = 0;
      try {
        v = std::stoll(parts[0]);
      } catch (const std::exception&) {
        throw ConfigError("malformed residue: \"" + parts[0] + "\"");
      }
      if (v < 0 || v >= spec_.p) throw ConfigError("residue out of range [0, p)");
      return Scalar{v};
    }
    if (static_cast<i64>(parts.size()) != degree_)
      throw ConfigError("cyclotomic scalar needs exactly phi(ell) coordinates");
    std::vector<Rational> c;
    c.reserve(parts.size());
    for (const auto& s : parts) c.push_back(rational_from_string(s));
    detail::qpoly_trim(c);
    return Scalar{std::move(c)};
  }

 private:
  Scalar compute_root_power(i64 e) const {
    if (spec_.kind == FieldKind::prime) return Scalar{detail::pow_mod(epsilon_, e, spec_.p)};
    std::vector<Rational> x(static_cast<size_t>(e) + 1, Rational(0));
    x[static_cast<size_t>(e)] = 1;
    return Scalar{detail::qpoly_reduce(std::move(x), phi_)};
  }

  static i64 smallest_primitive_root(i64 p) {
    if (p == 2) return 1;
    auto factors = detail::prime_factors(p - 1);
    for (i64 g = 2; g < p; ++g) {
      bool ok = true;
      for (i64 r : factors)
        if (detail::pow_mod(g, (p - 1) / r, p) == 1) {
          ok = false;
          break;
        }
      if (ok) return g;
    }
    throw InternalError("no primitive root found");  // unreachable for prime p
  }

  FieldSpec spec_;
  IntPoly phi_;           // cyclotomic mode
  i64 degree_ = 1;        // phi(ell)
  i64 primitive_root_ = 0;
  i64 epsilon_ = 1;       // prime mode
  std::vector<Scalar> root_table_;
};

}  // namespace qtorus
