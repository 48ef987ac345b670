#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qtorus/coeff.hpp"
#include "qtorus/commutation.hpp"
#include "qtorus/lattice.hpp"

namespace qtorus {

// Part precision: the element is known exactly modulo monomials of the
// power-series part with total degree >= N. nullopt means unbounded (exact).
using Precision = std::optional<i64>;

inline Precision min_precision(Precision a, Precision b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

inline Precision offset_precision(Precision p, i64 delta) {
  if (!p) return p;
  return *p + delta;
}

// Shared algebra context: commutation data plus the coefficient field.
struct SeriesContext {
  CommutationData cd;
  CoeffField field;

  SeriesContext(CommutationData c, FieldSpec spec)
      : cd(std::move(c)), field((spec.ell = cd.ell(), spec)) {}

  bool operator==(const SeriesContext& o) const {
    return cd == o.cd && field.spec() == o.field.spec();
  }
};

using SeriesContextPtr = std::shared_ptr<const SeriesContext>;

inline SeriesContextPtr make_series_context(CommutationData cd, FieldSpec spec = {}) {
  return std::make_shared<const SeriesContext>(std::move(cd), spec);
}

using TermMap = std::map<ExponentVector, Scalar, GrlexLess>;

namespace detail {

inline ExponentVector vec_add(const ExponentVector& a, const ExponentVector& b) {
  ExponentVector c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

inline ExponentVector vec_sub(const ExponentVector& a, const ExponentVector& b) {
  ExponentVector c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

inline ExponentVector vec_neg(const ExponentVector& a) {
  ExponentVector c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
  return c;
}

inline ExponentVector vec_max0(const ExponentVector& a) {
  ExponentVector c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = std::max<i64>(a[i], 0);
  return c;
}

// (c x^a)(d x^b) = c d eps^{E(a,b)} x^{a+b}; the twisted group law all
// series arithmetic reduces to.
inline std::pair<ExponentVector, Scalar> mono_mul(const SeriesContext& ctx, const ExponentVector& a,
                                                  const Scalar& c, const ExponentVector& b,
                                                  const Scalar& d) {
  Scalar coeff = ctx.field.mul(ctx.field.mul(c, d),
                               ctx.field.root_power(ordering_exponent(ctx.cd, a, b)));
  return {vec_add(a, b), std::move(coeff)};
}

inline void accumulate_term(const SeriesContext& ctx, TermMap& into, ExponentVector e, Scalar c) {
  auto it = into.find(e);
  if (it == into.end()) {
    if (!ctx.field.is_zero(c)) into.emplace(std::move(e), std::move(c));
    return;
  }
  it->second = ctx.field.add(it->second, c);
  if (ctx.field.is_zero(it->second)) into.erase(it);
}

// Plain product of two shift-free parts, truncated below cap.
inline TermMap part_mul(const SeriesContext& ctx, const TermMap& a, const TermMap& b,
                        Precision cap) {
  TermMap out;
  for (const auto& [s, c] : a) {
    i64 ds = total_degree(s);
    for (const auto& [t, d] : b) {
      if (cap && ds + total_degree(t) >= *cap) continue;
      auto [e, coeff] = mono_mul(ctx, s, c, t, d);
      accumulate_term(ctx, out, std::move(e), std::move(coeff));
    }
  }
  return out;
}

inline TermMap part_sub(const SeriesContext& ctx, TermMap a, const TermMap& b) {
  for (const auto& [t, d] : b) accumulate_term(ctx, a, t, ctx.field.neg(d));
  return a;
}

}  // namespace detail

// Truncated skew power / Laurent series: x^{-shift} * part, the part a
// finitely supported sum of c_s x^s with s >= 0 and total degree < precision.
class SkewSeries {
 public:
  explicit SkewSeries(SeriesContextPtr ctx)
      : ctx_(std::move(ctx)), shift_(static_cast<size_t>(ctx_->cd.n()), 0) {}

  static SkewSeries zero(SeriesContextPtr ctx) { return SkewSeries(std::move(ctx)); }

  static SkewSeries constant(SeriesContextPtr ctx, Scalar c) {
    SkewSeries f(std::move(ctx));
    if (!f.ctx_->field.is_zero(c))
      f.terms_.emplace(ExponentVector(static_cast<size_t>(f.ctx_->cd.n()), 0), std::move(c));
    return f;
  }

  static SkewSeries one(SeriesContextPtr ctx) {
    Scalar c = ctx->field.one();
    return constant(std::move(ctx), std::move(c));
  }

  // c * x^e for any integer exponent vector e; negative entries become shift.
  static SkewSeries monomial(SeriesContextPtr ctx, const ExponentVector& e, Scalar c) {
    detail::check_dim(ctx->cd, e);
    if (ctx->field.is_zero(c)) return zero(std::move(ctx));
    SkewSeries f(std::move(ctx));
    TermMap raw;
    raw.emplace(e, std::move(c));
    f.assign_from_raw(std::move(raw), std::nullopt);
    return f;
  }

  static SkewSeries variable(SeriesContextPtr ctx, i64 i) {
    ExponentVector e = unit_vector(ctx->cd.n(), i);
    Scalar c = ctx->field.one();
    return monomial(std::move(ctx), e, std::move(c));
  }

  // Assemble from already-normalized data (deserialization, tests).
  static SkewSeries from_parts(SeriesContextPtr ctx, ExponentVector shift, TermMap terms,
                               Precision precision) {
    detail::check_dim(ctx->cd, shift);
    for (i64 v : shift)
      if (v < 0) throw ConfigError("series shift entries must be non-negative");
    if (precision && *precision < 1) throw ConfigError("series precision must be positive");
    for (const auto& [s, c] : terms) {
      detail::check_dim(ctx->cd, s);
      for (i64 v : s)
        if (v < 0) throw ConfigError("series part exponents must be non-negative");
    }
    SkewSeries f(std::move(ctx));
    f.shift_ = std::move(shift);
    f.terms_ = std::move(terms);
    f.precision_ = precision;
    f.prune();
    return f;
  }

  const SeriesContextPtr& context() const { return ctx_; }
  const ExponentVector& shift() const { return shift_; }
  const TermMap& terms() const { return terms_; }
  Precision precision() const { return precision_; }

  // No known terms. With finite precision this means "zero modulo J^N".
  bool is_known_zero() const { return terms_.empty(); }

  // Coefficient of x^e in the represented element, e in Z^n.
  Scalar coefficient(const ExponentVector& e) const {
    ExponentVector s = detail::vec_add(e, shift_);
    for (i64 v : s)
      if (v < 0) return ctx_->field.zero();
    // stored part term s corresponds to x^{-shift} x^s = eps^{E(-shift, s)} x^{e}
    auto it = terms_.find(s);
    if (it == terms_.end()) return ctx_->field.zero();
    i64 twist = ordering_exponent(ctx_->cd, detail::vec_neg(shift_), s);
    return ctx_->field.mul(it->second, ctx_->field.root_power(twist));
  }

  bool operator==(const SkewSeries& o) const {
    return *ctx_ == *o.ctx_ && shift_ == o.shift_ && terms_ == o.terms_ &&
           precision_ == o.precision_;
  }

 private:
  friend SkewSeries series_add(const SkewSeries&, const SkewSeries&);
  friend SkewSeries series_scale(const Scalar&, const SkewSeries&);
  friend SkewSeries series_mul(const SkewSeries&, const SkewSeries&);
  friend SkewSeries series_invert(const SkewSeries&, i64);
  friend SkewSeries series_truncate(const SkewSeries&, Precision);
  friend SkewSeries raise_shift(const SkewSeries&, const ExponentVector&);

  // Install raw terms with arbitrary integer exponents: pick the minimal
  // shift w making every exponent non-negative and fold in the
  // normal-ordering compensation for x^{-w} * x^{w + e}.
  void assign_from_raw(TermMap raw, Precision part_precision_after_shift) {
    i64 n = ctx_->cd.n();
    ExponentVector w(static_cast<size_t>(n), 0);
    for (const auto& [e, c] : raw)
      for (i64 i = 0; i < n; ++i)
        w[static_cast<size_t>(i)] = std::max(w[static_cast<size_t>(i)], -e[static_cast<size_t>(i)]);
    TermMap part;
    for (auto& [e, c] : raw) {
      ExponentVector s = detail::vec_add(w, e);
      i64 twist = ordering_exponent(ctx_->cd, w, s);
      Scalar coeff = ctx_->field.mul(c, ctx_->field.root_power(twist));
      if (!ctx_->field.is_zero(coeff)) part.emplace(std::move(s), std::move(coeff));
    }
    shift_ = std::move(w);
    terms_ = std::move(part);
    precision_ = part_precision_after_shift;
    prune();
  }

  void prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      bool drop = ctx_->field.is_zero(it->second) ||
                  (precision_ && total_degree(it->first) >= *precision_);
      it = drop ? terms_.erase(it) : std::next(it);
    }
  }

  SeriesContextPtr ctx_;
  ExponentVector shift_;
  TermMap terms_;
  Precision precision_;  // nullopt = exact
};

namespace detail {

inline void check_same_context(const SkewSeries& f, const SkewSeries& g) {
  if (!(*f.context() == *g.context()))
    throw DomainError("series belong to different algebra contexts");
}

}  // namespace detail

// Rewrite f = x^{-v} * F as x^{-w} * F' for w >= v componentwise; the part
// picks up x^{w-v} on the left and the matching root-of-unity compensation.
inline SkewSeries raise_shift(const SkewSeries& f, const ExponentVector& w) {
  const auto& ctx = *f.context();
  ExponentVector delta = detail::vec_sub(w, f.shift());
  for (i64 v : delta)
    if (v < 0) throw InternalError("raise_shift target below current shift");
  if (total_degree(delta) == 0) return f;
  SkewSeries out(f.context());
  Scalar comp = ctx.field.root_power(-ordering_exponent(ctx.cd, detail::vec_neg(w), delta));
  TermMap terms;
  for (const auto& [s, c] : f.terms()) {
    auto [e, coeff] = detail::mono_mul(ctx, delta, comp, s, c);
    terms.emplace(std::move(e), std::move(coeff));
  }
  out.shift_ = w;
  out.terms_ = std::move(terms);
  out.precision_ = offset_precision(f.precision(), total_degree(delta));
  return out;
}

inline SkewSeries series_add(const SkewSeries& f, const SkewSeries& g) {
  detail::check_same_context(f, g);
  const auto& ctx = *f.context();
  ExponentVector w(f.shift().size());
  for (size_t i = 0; i < w.size(); ++i) w[i] = std::max(f.shift()[i], g.shift()[i]);
  SkewSeries fa = raise_shift(f, w);
  SkewSeries ga = raise_shift(g, w);
  SkewSeries out(f.context());
  out.shift_ = std::move(w);
  out.precision_ = min_precision(fa.precision(), ga.precision());
  out.terms_ = std::move(fa.terms_);
  for (const auto& [t, d] : ga.terms()) detail::accumulate_term(ctx, out.terms_, t, d);
  out.prune();
  return out;
}

inline SkewSeries series_scale(const Scalar& c, const SkewSeries& f) {
  const auto& ctx = *f.context();
  SkewSeries out(f.context());
  out.shift_ = f.shift();
  out.precision_ = f.precision();
  for (const auto& [s, v] : f.terms()) {
    Scalar coeff = ctx.field.mul(c, v);
    if (!ctx.field.is_zero(coeff)) out.terms_.emplace(s, std::move(coeff));
  }
  return out;
}

// x^{-u} F * x^{-v} G = eps^{E(-u,-v)} x^{-(u+v)} (F~ G), where F~ twists
// each term of F by sigma(s, -v) from commuting x^s past x^{-v}.
inline SkewSeries series_mul(const SkewSeries& f, const SkewSeries& g) {
  detail::check_same_context(f, g);
  const auto& ctx = *f.context();
  const ExponentVector& u = f.shift();
  const ExponentVector& v = g.shift();
  ExponentVector neg_v = detail::vec_neg(v);
  Scalar lead = ctx.field.root_power(ordering_exponent(ctx.cd, detail::vec_neg(u), neg_v));
  Precision prec = min_precision(f.precision(), g.precision());
  SkewSeries out(f.context());
  out.shift_ = detail::vec_add(u, v);
  out.precision_ = prec;
  for (const auto& [s, c] : f.terms()) {
    i64 ds = total_degree(s);
    Scalar twisted = ctx.field.mul(
        ctx.field.mul(lead, c), ctx.field.root_power(sigma_exponent(ctx.cd, s, neg_v)));
    for (const auto& [t, d] : g.terms()) {
      if (prec && ds + total_degree(t) >= *prec) continue;
      auto [e, coeff] = detail::mono_mul(ctx, s, twisted, t, d);
      detail::accumulate_term(ctx, out.terms_, std::move(e), std::move(coeff));
    }
  }
  return out;
}

inline SkewSeries series_truncate(const SkewSeries& f, Precision target) {
  if (!target) return f;
  if (*target < 1) throw DomainError("truncation precision must be positive");
  SkewSeries out = f;
  out.precision_ = min_precision(f.precision(), target);
  out.prune();
  return out;
}

// Inverse of f to part precision (at most) target_precision. f must be a
// unit of L representable in shifted form: the componentwise-minimal
// support point must itself carry a term.
inline SkewSeries series_invert(const SkewSeries& f, i64 target_precision) {
  if (target_precision < 1) throw DomainError("target precision must be positive");
  const auto& ctx = *f.context();
  const auto& field = ctx.field;
  if (f.terms().empty()) {
    if (f.precision())
      throw DomainError("not invertible: no known terms below the precision bound");
    throw DomainError("zero is not invertible");
  }
  i64 n = ctx.cd.n();
  ExponentVector m = f.terms().begin()->first;
  for (const auto& [s, c] : f.terms())
    for (i64 i = 0; i < n; ++i)
      m[static_cast<size_t>(i)] = std::min(m[static_cast<size_t>(i)], s[static_cast<size_t>(i)]);
  auto lead_it = f.terms().find(m);
  if (lead_it == f.terms().end())
    throw DomainError(
        "not invertible in shifted form: the lowest part is not a single monomial");
  // factor f's part as (c x^m) * F0 with F0 = 1 + (higher terms)
  Scalar c_inv = field.mul(field.inv(lead_it->second),
                           field.root_power(ordering_exponent(ctx.cd, m, m)));
  ExponentVector neg_m = detail::vec_neg(m);
  TermMap f0;
  for (const auto& [s, c] : f.terms()) {
    auto [e, coeff] = detail::mono_mul(ctx, neg_m, c_inv, s, c);
    f0.emplace(std::move(e), std::move(coeff));
  }
  Precision avail = offset_precision(f.precision(), -total_degree(m));

  ExponentVector w = detail::vec_max0(detail::vec_sub(m, f.shift()));
  i64 delta = total_degree(detail::vec_add(detail::vec_sub(f.shift(), m), w));

  TermMap inverse_part;
  Precision inverse_precision;
  ExponentVector zero_exp(static_cast<size_t>(n), 0);
  if (f0.size() == 1 && !avail) {
    inverse_part.emplace(zero_exp, field.one());  // exact monomial inverse
  } else {
    i64 needed = std::max<i64>(1, target_precision - delta);
    i64 p = avail ? std::min(*avail, needed) : needed;
    if (p < 1) throw DomainError("input precision too low for the requested inverse");
    TermMap g;
    g.emplace(zero_exp, field.one());
    TermMap two;
    two.emplace(zero_exp, field.add(field.one(), field.one()));
    i64 cur = 1;
    while (cur < p) {
      cur = std::min(2 * cur, p);
      TermMap fg = detail::part_mul(ctx, f0, g, cur);
      g = detail::part_mul(ctx, g, detail::part_sub(ctx, two, fg), cur);
    }
    inverse_part = std::move(g);
    inverse_precision = p + delta;
  }

  // assemble g * (c x^m)^{-1} * (x^{-v})^{-1} and renormalize the shift;
  // (x^{-v})^{-1} = eps^{E(v,v)} x^{v}
  Scalar shift_inv_coeff =
      field.root_power(ordering_exponent(ctx.cd, f.shift(), f.shift()));
  auto t_mono = detail::mono_mul(ctx, neg_m, c_inv, f.shift(), shift_inv_coeff);
  TermMap raw;
  for (const auto& [s, c] : inverse_part) {
    auto [e, coeff] = detail::mono_mul(ctx, s, c, t_mono.first, t_mono.second);
    detail::accumulate_term(ctx, raw, std::move(e), std::move(coeff));
  }
  SkewSeries out(f.context());
  out.assign_from_raw(std::move(raw), inverse_precision);
  return out;
}

inline SkewSeries operator+(const SkewSeries& f, const SkewSeries& g) { return series_add(f, g); }
inline SkewSeries operator*(const SkewSeries& f, const SkewSeries& g) { return series_mul(f, g); }
inline SkewSeries operator-(const SkewSeries& f) {
  return series_scale(f.context()->field.from_int(-1), f);
}
inline SkewSeries operator-(const SkewSeries& f, const SkewSeries& g) { return f + (-g); }

// Same represented element up to the jointly known precision.
inline bool value_equal(const SkewSeries& f, const SkewSeries& g) {
  detail::check_same_context(f, g);
  ExponentVector w(f.shift().size());
  for (size_t i = 0; i < w.size(); ++i) w[i] = std::max(f.shift()[i], g.shift()[i]);
  SkewSeries fa = raise_shift(f, w);
  SkewSeries ga = raise_shift(g, w);
  Precision p = min_precision(fa.precision(), ga.precision());
  return series_truncate(fa, p).terms() == series_truncate(ga, p).terms();
}

// Support criterion for centrality: every exponent of the represented
// element lies in the central sublattice S.
inline bool is_central(const SkewSeries& f) {
  const auto& cd = f.context()->cd;
  for (const auto& [s, c] : f.terms())
    if (!in_kernel(cd, detail::vec_sub(s, f.shift()))) return false;
  return true;
}

struct CentralCoordinates {
  std::vector<i64> coords;  // s = sum coords_i * b_i
  i64 gamma_exponent = 0;   // x^s = eps^{gamma_exponent} z_1^{m_1} ... z_n^{m_n}

  bool operator==(const CentralCoordinates&) const = default;
};

namespace detail {

// Monomials tracked as (exponent, power of eps): enough for products of
// central generators, where every scalar is a root of unity.
struct EMono {
  ExponentVector exp;
  i64 eps = 0;
};

inline EMono emono_mul(const CommutationData& cd, const EMono& a, const EMono& b) {
  return {vec_add(a.exp, b.exp),
          mod_reduce(a.eps + b.eps + ordering_exponent(cd, a.exp, b.exp), cd.ell())};
}

inline EMono emono_inv(const CommutationData& cd, const EMono& a) {
  ExponentVector neg = vec_neg(a.exp);
  return {neg, mod_reduce(-a.eps - ordering_exponent(cd, a.exp, neg), cd.ell())};
}

inline EMono emono_pow(const CommutationData& cd, EMono base, i64 k) {
  if (k < 0) {
    base = emono_inv(cd, base);
    k = -k;
  }
  EMono acc{ExponentVector(base.exp.size(), 0), 0};
  while (k > 0) {
    if (k & 1) acc = emono_mul(cd, acc, base);
    base = emono_mul(cd, base, base);
    k >>= 1;
  }
  return acc;
}

}  // namespace detail

// Coordinates of a central exponent s in the given basis of S, plus the
// root-of-unity exponent relating x^s to the ordered product of the z_i.
inline CentralCoordinates central_coordinates(const CommutationData& cd, const LatticeBasis& basis,
                                              const ExponentVector& s) {
  if (!in_kernel(cd, s)) throw DomainError("exponent is not central: it lies outside S");
  auto coords = basis.solve(s);
  if (!coords)
    throw InternalError("basis does not span the central sublattice at the given exponent");
  detail::EMono acc{ExponentVector(s.size(), 0), 0};
  for (i64 i = 0; i < basis.n(); ++i) {
    detail::EMono zi{basis.rows().row(i), 0};
    acc = detail::emono_mul(cd, acc, detail::emono_pow(cd, zi, (*coords)[static_cast<size_t>(i)]));
  }
  if (acc.exp != s) throw InternalError("central coordinate reconstruction mismatch");
  return {*coords, mod_reduce(-acc.eps, cd.ell())};
}

inline std::string monomial_to_string(const ExponentVector& e) {
  std::ostringstream os;
  bool any = false;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (any) os << "*";
    os << "x" << (i + 1);
    if (e[i] != 1) os << "^" << e[i];
    any = true;
  }
  return any ? os.str() : "1";
}

inline std::string scalar_to_string(const CoeffField& field, const Scalar& c) {
  if (field.spec().kind == FieldKind::prime) return std::to_string(std::get<i64>(c.rep));
  const auto& v = std::get<std::vector<Rational>>(c.rep);
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (!first) os << " + ";
    os << rational_to_string(v[i]);
    if (i >= 1) os << "*z" << (i > 1 ? "^" + std::to_string(i) : "");
    first = false;
  }
  std::string s = os.str();
  if (s.find(" + ") != std::string::npos || s.find("*z") != std::string::npos) s = "(" + s + ")";
  return s;
}

inline std::string series_to_string(const SkewSeries& f) {
  const auto& field = f.context()->field;
  std::ostringstream os;
  if (total_degree(f.shift()) > 0)
    os << "x^-" << "(" << monomial_to_string(f.shift()) << ") * [";
  if (f.terms().empty()) {
    os << "0";
  } else {
    bool first = true;
    for (const auto& [s, c] : f.terms()) {
      if (!first) os << " + ";
      std::string cs = scalar_to_string(field, c);
      std::string ms = monomial_to_string(s);
      if (ms == "1")
        os << cs;
      else if (cs == "1")
        os << ms;
      else
        os << cs << "*" << ms;
      first = false;
    }
  }
  if (total_degree(f.shift()) > 0) os << "]";
  if (f.precision()) os << " + O(deg " << *f.precision() << ")";
  return os.str();
}

}  // namespace qtorus
