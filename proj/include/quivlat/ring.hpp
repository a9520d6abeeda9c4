#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "quivlat/error.hpp"

namespace quivlat {

using Integer = mpz_class;
using Rational = mpq_class;

/// Coefficients c0 + c1 e + ... + c_{n-1} e^{n-1} of an element of F_p[e]/(e^n),
/// each in [0, p). Always of length n.
using TruncatedCoeffs = std::vector<std::int64_t>;

/// An exact ring element. The active alternative is dictated by the owning Ring:
/// Integer for Z, Z/m and F_p; Rational for Q; TruncatedCoeffs for F_p[e]/(e^n).
class Elem {
 public:
  Elem() : value_(Integer(0)) {}
  explicit Elem(Integer v) : value_(std::move(v)) {}
  explicit Elem(Rational v) : value_(std::move(v)) {}
  explicit Elem(TruncatedCoeffs v) : value_(std::move(v)) {}

  const Integer& integer() const { return std::get<Integer>(value_); }
  const Rational& rational() const { return std::get<Rational>(value_); }
  const TruncatedCoeffs& coeffs() const { return std::get<TruncatedCoeffs>(value_); }

  friend bool operator==(const Elem& a, const Elem& b) { return a.value_ == b.value_; }

 private:
  std::variant<Integer, Rational, TruncatedCoeffs> value_;
};

namespace detail {

inline std::int64_t mod_floor(std::int64_t a, std::int64_t p) {
  std::int64_t r = a % p;
  return r < 0 ? r + p : r;
}

inline std::int64_t inverse_mod(std::int64_t a, std::int64_t p) {
  std::int64_t r0 = p, r1 = mod_floor(a, p), s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
  }
  if (r0 != 1) fail(ErrorKind::InvalidArgument, "element is not invertible");
  return mod_floor(s0, p);
}

}  // namespace detail

/// Result of an extended gcd step: [s t; u v] * [a; b] = [g; 0] with s*v - t*u a unit.
struct Gcdex {
  Elem s, t, u, v;
};

/// A computable commutative ring: Z, Q, F_p, Z/m or F_p[e]/(e^n).
///
/// Every supported ring is a principal ideal ring with canonical
/// representatives, so besides the ring operations it exposes the primitives
/// the echelon and Smith algorithms need: gcdex, annihilators, canonical
/// associates and division with remainder by a canonical element.
class Ring {
 public:
  enum class Kind { Integers, Rationals, PrimeField, IntegersMod, TruncatedPoly };

  static Ring integers() { return Ring(Kind::Integers, Integer(0), 0); }
  static Ring rationals() { return Ring(Kind::Rationals, Integer(0), 0); }

  static Ring prime_field(const Integer& p) {
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 40) == 0)
      fail(ErrorKind::InvalidArgument, "F:" + p.get_str() + " is not a prime field");
    return Ring(Kind::PrimeField, p, 0);
  }

  static Ring integers_mod(const Integer& m) {
    if (m < 2) fail(ErrorKind::InvalidArgument, "Zmod:m requires m >= 2");
    return Ring(Kind::IntegersMod, m, 0);
  }

  static Ring truncated_poly(std::int64_t p, int n) {
    if (p < 2 || p > std::numeric_limits<std::int32_t>::max() ||
        mpz_probab_prime_p(Integer(static_cast<long>(p)).get_mpz_t(), 40) == 0)
      fail(ErrorKind::InvalidArgument, "Feps:p:n requires a prime p < 2^31");
    if (n < 1) fail(ErrorKind::InvalidArgument, "Feps:p:n requires n >= 1");
    return Ring(Kind::TruncatedPoly, Integer(static_cast<long>(p)), n);
  }

  /// Parses "Z", "Q", "F:p", "Zmod:m", "Feps:p:n".
  static Ring parse(std::string_view spec) {
    auto parse_int = [&](std::string_view s) {
      Integer v;
      if (s.empty() || v.set_str(std::string(s), 10) != 0)
        fail(ErrorKind::ParseError, "bad ring spec '" + std::string(spec) + "'");
      return v;
    };
    if (spec == "Z") return integers();
    if (spec == "Q") return rationals();
    if (spec.starts_with("F:")) return prime_field(parse_int(spec.substr(2)));
    if (spec.starts_with("Zmod:")) return integers_mod(parse_int(spec.substr(5)));
    if (spec.starts_with("Feps:")) {
      auto rest = spec.substr(5);
      auto colon = rest.find(':');
      if (colon == std::string_view::npos)
        fail(ErrorKind::ParseError, "bad ring spec '" + std::string(spec) + "'");
      Integer p = parse_int(rest.substr(0, colon));
      Integer n = parse_int(rest.substr(colon + 1));
      if (!p.fits_slong_p() || !n.fits_sint_p())
        fail(ErrorKind::InvalidArgument, "Feps parameters out of range");
      return truncated_poly(p.get_si(), static_cast<int>(n.get_si()));
    }
    fail(ErrorKind::ParseError, "unknown ring spec '" + std::string(spec) + "'");
  }

  Kind kind() const { return kind_; }
  /// p for F_p and F_p[e]/(e^n), m for Z/m, 0 otherwise.
  const Integer& modulus() const { return modulus_; }
  std::int64_t char_p() const { return modulus_.get_si(); }
  int nilpotency() const { return n_; }

  std::string spec() const {
    switch (kind_) {
      case Kind::Integers: return "Z";
      case Kind::Rationals: return "Q";
      case Kind::PrimeField: return "F:" + modulus_.get_str();
      case Kind::IntegersMod: return "Zmod:" + modulus_.get_str();
      case Kind::TruncatedPoly: return "Feps:" + modulus_.get_str() + ":" + std::to_string(n_);
    }
    return "?";
  }

  bool is_field() const {
    return kind_ == Kind::Rationals || kind_ == Kind::PrimeField ||
           (kind_ == Kind::TruncatedPoly && n_ == 1);
  }
  bool is_finite() const { return kind_ != Kind::Integers && kind_ != Kind::Rationals; }

  /// Number of elements, for finite rings.
  std::optional<Integer> cardinality() const {
    switch (kind_) {
      case Kind::PrimeField:
      case Kind::IntegersMod: return modulus_;
      case Kind::TruncatedPoly: {
        Integer c;
        mpz_pow_ui(c.get_mpz_t(), modulus_.get_mpz_t(), static_cast<unsigned long>(n_));
        return c;
      }
      default: return std::nullopt;
    }
  }

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.kind_ == b.kind_ && a.modulus_ == b.modulus_ && a.n_ == b.n_;
  }

  // ---- element construction -------------------------------------------------

  Elem zero() const { return from_integer(Integer(0)); }
  Elem one() const { return from_integer(Integer(1)); }

  Elem from_integer(const Integer& x) const {
    switch (kind_) {
      case Kind::Integers: return Elem(x);
      case Kind::Rationals: return Elem(Rational(x));
      case Kind::PrimeField:
      case Kind::IntegersMod: return Elem(reduce(x));
      case Kind::TruncatedPoly: {
        TruncatedCoeffs c(static_cast<std::size_t>(n_), 0);
        Integer r = reduce(x);
        c[0] = r.get_si();
        return Elem(std::move(c));
      }
    }
    return Elem();
  }
  Elem from_int(long x) const { return from_integer(Integer(x)); }

  Elem from_rational(const Rational& q) const {
    if (kind_ == Kind::Rationals) {
      Rational c = q;
      c.canonicalize();
      return Elem(c);
    }
    if (q.get_den() == 1) return from_integer(q.get_num());
    Elem den = from_integer(q.get_den());
    if (!is_unit(den))
      fail(ErrorKind::InvalidArgument, "denominator not invertible in " + spec());
    return mul(from_integer(q.get_num()), inverse(den));
  }

  Elem from_coeffs(const std::vector<Integer>& cs) const {
    if (kind_ != Kind::TruncatedPoly) {
      if (cs.size() > 1)
        for (std::size_t i = 1; i < cs.size(); ++i)
          if (cs[i] != 0) fail(ErrorKind::ParseError, "polynomial entry over " + spec());
      return from_integer(cs.empty() ? Integer(0) : cs[0]);
    }
    TruncatedCoeffs c(static_cast<std::size_t>(n_), 0);
    for (std::size_t i = 0; i < cs.size() && i < c.size(); ++i) c[i] = reduce(cs[i]).get_si();
    return Elem(std::move(c));
  }

  // ---- arithmetic -------------------------------------------------------------

  Elem add(const Elem& a, const Elem& b) const {
    switch (kind_) {
      case Kind::Integers: return Elem(Integer(a.integer() + b.integer()));
      case Kind::Rationals: return Elem(Rational(a.rational() + b.rational()));
      case Kind::PrimeField:
      case Kind::IntegersMod: {
        Integer s = a.integer() + b.integer();
        if (s >= modulus_) s -= modulus_;
        return Elem(std::move(s));
      }
      case Kind::TruncatedPoly: {
        TruncatedCoeffs c = a.coeffs();
        const auto& d = b.coeffs();
        const std::int64_t p = char_p();
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = (c[i] + d[i]) % p;
        return Elem(std::move(c));
      }
    }
    return Elem();
  }

  Elem neg(const Elem& a) const {
    switch (kind_) {
      case Kind::Integers: return Elem(Integer(-a.integer()));
      case Kind::Rationals: return Elem(Rational(-a.rational()));
      case Kind::PrimeField:
      case Kind::IntegersMod:
        return a.integer() == 0 ? a : Elem(Integer(modulus_ - a.integer()));
      case Kind::TruncatedPoly: {
        TruncatedCoeffs c = a.coeffs();
        const std::int64_t p = char_p();
        for (auto& x : c) x = x == 0 ? 0 : p - x;
        return Elem(std::move(c));
      }
    }
    return Elem();
  }

  Elem sub(const Elem& a, const Elem& b) const {
    switch (kind_) {
      case Kind::Integers: return Elem(Integer(a.integer() - b.integer()));
      case Kind::Rationals: return Elem(Rational(a.rational() - b.rational()));
      case Kind::PrimeField:
      case Kind::IntegersMod: {
        Integer s = a.integer() - b.integer();
        if (s < 0) s += modulus_;
        return Elem(std::move(s));
      }
      default: return add(a, neg(b));
    }
  }

  Elem mul(const Elem& a, const Elem& b) const {
    switch (kind_) {
      case Kind::Integers: return Elem(Integer(a.integer() * b.integer()));
      case Kind::Rationals: return Elem(Rational(a.rational() * b.rational()));
      case Kind::PrimeField:
      case Kind::IntegersMod: {
        Integer s = a.integer() * b.integer();
        mpz_mod(s.get_mpz_t(), s.get_mpz_t(), modulus_.get_mpz_t());
        return Elem(std::move(s));
      }
      case Kind::TruncatedPoly: {
        const auto& x = a.coeffs();
        const auto& y = b.coeffs();
        const std::int64_t p = char_p();
        TruncatedCoeffs c(x.size(), 0);
        for (std::size_t i = 0; i < x.size(); ++i) {
          if (x[i] == 0) continue;
          for (std::size_t j = 0; i + j < x.size(); ++j) c[i + j] = (c[i + j] + x[i] * y[j]) % p;
        }
        return Elem(std::move(c));
      }
    }
    return Elem();
  }

  bool is_zero(const Elem& a) const {
    switch (kind_) {
      case Kind::Rationals: return a.rational() == 0;
      case Kind::TruncatedPoly:
        for (auto x : a.coeffs())
          if (x != 0) return false;
        return true;
      default: return a.integer() == 0;
    }
  }

  bool is_one(const Elem& a) const { return a == one(); }

  bool is_unit(const Elem& a) const {
    switch (kind_) {
      case Kind::Integers: return a.integer() == 1 || a.integer() == -1;
      case Kind::Rationals: return a.rational() != 0;
      case Kind::PrimeField: return a.integer() != 0;
      case Kind::IntegersMod: return gcd(a.integer(), modulus_) == 1;
      case Kind::TruncatedPoly: return a.coeffs()[0] != 0;
    }
    return false;
  }

  Elem inverse(const Elem& a) const {
    if (!is_unit(a)) fail(ErrorKind::InvalidArgument, "element is not a unit of " + spec());
    switch (kind_) {
      case Kind::Integers: return a;
      case Kind::Rationals: return Elem(Rational(1 / a.rational()));
      case Kind::PrimeField:
      case Kind::IntegersMod: {
        Integer r;
        mpz_invert(r.get_mpz_t(), a.integer().get_mpz_t(), modulus_.get_mpz_t());
        return Elem(std::move(r));
      }
      case Kind::TruncatedPoly: return Elem(series_inverse(a.coeffs()));
    }
    return Elem();
  }

  // ---- principal ideal ring structure ----------------------------------------

  /// Valuation-like size used to pick pivots: |x| over Z, e-adic valuation over
  /// F_p[e]/(e^n), gcd(x, m) over Z/m, 0 for nonzero field elements.
  Integer pivot_size(const Elem& a) const {
    switch (kind_) {
      case Kind::Integers: return abs(a.integer());
      case Kind::IntegersMod: return gcd(a.integer(), modulus_);
      case Kind::TruncatedPoly: return Integer(valuation(a));
      default: return Integer(0);
    }
  }

  /// True when every nonzero element of minimal pivot_size among a set divides the
  /// others (fields, local rings) or division with remainder strictly shrinks
  /// pivot_size (Z). False for Z/m with composite m.
  bool has_euclidean_pivots() const { return kind_ != Kind::IntegersMod; }

  Gcdex gcdex(const Elem& a, const Elem& b) const {
    if (is_zero(b)) return {one(), zero(), zero(), one()};
    if (auto q = exact_div(b, a)) return {one(), zero(), neg(*q), one()};
    switch (kind_) {
      case Kind::Integers:
      case Kind::IntegersMod: {
        Integer g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.integer().get_mpz_t(),
                   b.integer().get_mpz_t());
        Integer u = -b.integer() / g;
        Integer v = a.integer() / g;
        return {from_integer(s), from_integer(t), from_integer(u), from_integer(v)};
      }
      default: {
        // b has strictly smaller valuation (or a == 0): swap and clear.
        auto q = exact_div(a, b);
        return {zero(), one(), one(), neg(*q)};
      }
    }
  }

  /// A generator of the annihilator ideal of a.
  Elem annihilator(const Elem& a) const {
    if (is_zero(a)) return one();
    switch (kind_) {
      case Kind::IntegersMod: return from_integer(Integer(modulus_ / gcd(a.integer(), modulus_)));
      case Kind::TruncatedPoly: {
        TruncatedCoeffs c(static_cast<std::size_t>(n_), 0);
        c[static_cast<std::size_t>(n_ - valuation(a))] = 1;
        return Elem(std::move(c));
      }
      default: return zero();
    }
  }

  /// A unit u such that u * a is the canonical generator of the ideal (a).
  Elem unit_normalizer(const Elem& a) const {
    if (is_zero(a)) return one();
    switch (kind_) {
      case Kind::Integers: return from_int(a.integer() < 0 ? -1 : 1);
      case Kind::Rationals:
      case Kind::PrimeField: return inverse(a);
      case Kind::IntegersMod: {
        Integer g = gcd(a.integer(), modulus_);
        Integer mg = modulus_ / g;
        Integer u0(1);
        if (mg > 1) {
          Integer ag = a.integer() / g;
          mpz_invert(u0.get_mpz_t(), ag.get_mpz_t(), mg.get_mpz_t());
        }
        Integer u = u0;
        while (gcd(u, modulus_) != 1) u += mg;
        return from_integer(u);
      }
      case Kind::TruncatedPoly: return Elem(series_inverse(shift_down(a.coeffs(), valuation(a))));
    }
    return one();
  }

  Elem canonical_associate(const Elem& a) const { return mul(unit_normalizer(a), a); }

  /// Division of x by a canonical (normalized) pivot: returns (q, r) with
  /// x = q * pivot + r and r the canonical remainder (zero iff pivot | x).
  std::pair<Elem, Elem> divmod(const Elem& x, const Elem& pivot) const {
    switch (kind_) {
      case Kind::Integers: {
        Integer q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x.integer().get_mpz_t(),
                    pivot.integer().get_mpz_t());
        return {Elem(q), Elem(r)};
      }
      case Kind::Rationals:
      case Kind::PrimeField: return {mul(x, inverse(pivot)), zero()};
      case Kind::IntegersMod: {
        Integer r = x.integer() % pivot.integer();
        Integer q = (x.integer() - r) / pivot.integer();
        return {from_integer(q), from_integer(r)};
      }
      case Kind::TruncatedPoly: {
        int v = valuation(pivot);
        TruncatedCoeffs r(static_cast<std::size_t>(n_), 0);
        for (int i = 0; i < v; ++i) r[static_cast<std::size_t>(i)] = x.coeffs()[static_cast<std::size_t>(i)];
        Elem q(shift_down(x.coeffs(), v));
        Elem unit_part(shift_down(pivot.coeffs(), v));
        return {mul(q, inverse(unit_part)), Elem(r)};
      }
    }
    return {zero(), x};
  }

  /// Some q with a * q = b, if b lies in the ideal (a).
  std::optional<Elem> exact_div(const Elem& b, const Elem& a) const {
    if (is_zero(b)) return zero();
    if (is_zero(a)) return std::nullopt;
    switch (kind_) {
      case Kind::Integers: {
        if (!mpz_divisible_p(b.integer().get_mpz_t(), a.integer().get_mpz_t())) return std::nullopt;
        return Elem(Integer(b.integer() / a.integer()));
      }
      case Kind::Rationals:
      case Kind::PrimeField: return mul(b, inverse(a));
      case Kind::IntegersMod: {
        Integer g = gcd(a.integer(), modulus_);
        if (!mpz_divisible_p(b.integer().get_mpz_t(), g.get_mpz_t())) return std::nullopt;
        Integer mg = modulus_ / g;
        Integer inv(0);
        if (mg > 1) {
          Integer ag = a.integer() / g;
          mpz_invert(inv.get_mpz_t(), ag.get_mpz_t(), mg.get_mpz_t());
        }
        Integer q = (b.integer() / g) * inv;
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), mg.get_mpz_t());
        return from_integer(q);
      }
      case Kind::TruncatedPoly: {
        int va = valuation(a), vb = valuation(b);
        if (vb < va) return std::nullopt;
        Elem ua(shift_down(a.coeffs(), va));
        Elem ub(shift_down(b.coeffs(), va));
        return mul(ub, inverse(ua));
      }
    }
    return std::nullopt;
  }

  bool divides(const Elem& a, const Elem& b) const { return exact_div(b, a).has_value(); }

  /// e-adic valuation over F_p[e]/(e^n) (n for zero).
  int valuation(const Elem& a) const {
    const auto& c = a.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0) return static_cast<int>(i);
    return n_;
  }

  /// All elements, in canonical order. Finite rings only.
  std::vector<Elem> elements() const {
    std::vector<Elem> out;
    switch (kind_) {
      case Kind::PrimeField:
      case Kind::IntegersMod:
        for (Integer x = 0; x < modulus_; ++x) out.push_back(Elem(x));
        break;
      case Kind::TruncatedPoly: {
        const std::int64_t p = char_p();
        TruncatedCoeffs c(static_cast<std::size_t>(n_), 0);
        while (true) {
          out.push_back(Elem(c));
          std::size_t i = 0;
          while (i < c.size() && ++c[i] == p) c[i++] = 0;
          if (i == c.size()) break;
        }
        break;
      }
      default: fail(ErrorKind::InvalidArgument, spec() + " is infinite");
    }
    return out;
  }

  std::string format(const Elem& a) const {
    switch (kind_) {
      case Kind::Rationals: return a.rational().get_str();
      case Kind::TruncatedPoly: {
        std::string s;
        const auto& c = a.coeffs();
        for (std::size_t i = 0; i < c.size(); ++i) {
          if (c[i] == 0) continue;
          if (!s.empty()) s += "+";
          if (i == 0 || c[i] != 1) s += std::to_string(c[i]);
          if (i >= 1) s += (i == 1 ? "e" : "e^" + std::to_string(i));
        }
        return s.empty() ? "0" : s;
      }
      default: return a.integer().get_str();
    }
  }

  /// Canonical representative of an integer in Z/m or F_p.
  Integer reduce(const Integer& x) const {
    Integer r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), modulus_.get_mpz_t());
    return r;
  }

 private:
  Ring(Kind kind, Integer modulus, int n) : kind_(kind), modulus_(std::move(modulus)), n_(n) {}

  TruncatedCoeffs shift_down(const TruncatedCoeffs& c, int v) const {
    TruncatedCoeffs out(c.size(), 0);
    for (std::size_t i = static_cast<std::size_t>(v); i < c.size(); ++i) out[i - static_cast<std::size_t>(v)] = c[i];
    return out;
  }

  TruncatedCoeffs series_inverse(const TruncatedCoeffs& c) const {
    const std::int64_t p = char_p();
    TruncatedCoeffs b(c.size(), 0);
    const std::int64_t b0 = detail::inverse_mod(c[0], p);
    b[0] = b0;
    for (std::size_t k = 1; k < c.size(); ++k) {
      std::int64_t acc = 0;
      for (std::size_t i = 1; i <= k; ++i) acc = (acc + c[i] * b[k - i]) % p;
      b[k] = detail::mod_floor(-b0 * acc % p, p);
    }
    return b;
  }

  Kind kind_;
  Integer modulus_;
  int n_;
};

}  // namespace quivlat
