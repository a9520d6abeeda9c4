#pragma once

#include <string>
#include <utility>
#include <vector>

#include "quivlat/error.hpp"
#include "quivlat/matrix.hpp"
#include "quivlat/ring.hpp"

namespace quivlat {

/// A homomorphism between supported rings. Only the canonical maps exist
/// (Z is initial, F_p and Z/m are quotients of Z, e is sent to e or to 0),
/// so a hom is determined by its kind and endpoints.
class RingHom {
 public:
  enum class Kind {
    Identity,
    IntToRationals,
    IntToPrimeField,
    IntToIntegersMod,
    IntToTruncatedPoly,
    IntegersModToIntegersMod,
    TruncatedPolyToPrimeField,
    TruncatedPolyTruncate,
    PrimeFieldToTruncatedPoly,
    Composite,
  };

  static RingHom identity(const Ring& r) { return RingHom(Kind::Identity, r, r); }

  /// The canonical map source -> target, or IncompatibleRing if there is none.
  static RingHom canonical(const Ring& source, const Ring& target) {
    using RK = Ring::Kind;
    if (source == target) return identity(source);
    auto none = [&]() -> RingHom {
      fail(ErrorKind::IncompatibleRing, "no canonical map " + source.spec() + " -> " + target.spec());
    };
    switch (source.kind()) {
      case RK::Integers:
        switch (target.kind()) {
          case RK::Rationals: return RingHom(Kind::IntToRationals, source, target);
          case RK::PrimeField: return RingHom(Kind::IntToPrimeField, source, target);
          case RK::IntegersMod: return RingHom(Kind::IntToIntegersMod, source, target);
          case RK::TruncatedPoly: return RingHom(Kind::IntToTruncatedPoly, source, target);
          default: return none();
        }
      case RK::IntegersMod:
        if (target.kind() == RK::IntegersMod && source.modulus() % target.modulus() == 0)
          return RingHom(Kind::IntegersModToIntegersMod, source, target);
        return none();
      case RK::TruncatedPoly:
        if (target.kind() == RK::PrimeField && target.modulus() == source.modulus())
          return RingHom(Kind::TruncatedPolyToPrimeField, source, target);
        if (target.kind() == RK::TruncatedPoly && target.modulus() == source.modulus() &&
            target.nilpotency() <= source.nilpotency())
          return RingHom(Kind::TruncatedPolyTruncate, source, target);
        return none();
      case RK::PrimeField:
        if (target.kind() == RK::TruncatedPoly && target.modulus() == source.modulus())
          return RingHom(Kind::PrimeFieldToTruncatedPoly, source, target);
        return none();
      default: return none();
    }
  }

  const Ring& source() const { return source_; }
  const Ring& target() const { return target_; }
  Kind kind() const { return kind_; }

  Elem apply(const Elem& a) const {
    switch (kind_) {
      case Kind::Identity: return a;
      case Kind::IntToRationals: return Elem(Rational(a.integer()));
      case Kind::IntToPrimeField:
      case Kind::IntToIntegersMod:
      case Kind::IntToTruncatedPoly:
      case Kind::IntegersModToIntegersMod:
      case Kind::PrimeFieldToTruncatedPoly: return target_.from_integer(a.integer());
      case Kind::TruncatedPolyToPrimeField: return target_.from_int(a.coeffs()[0]);
      case Kind::TruncatedPolyTruncate: {
        TruncatedCoeffs c(a.coeffs().begin(), a.coeffs().begin() + target_.nilpotency());
        return Elem(std::move(c));
      }
      case Kind::Composite: {
        Elem x = a;
        for (const auto& h : steps_) x = h.apply(x);
        return x;
      }
    }
    return a;
  }

  bool is_surjective() const {
    switch (kind_) {
      case Kind::IntToRationals: return false;
      case Kind::IntToTruncatedPoly:
      case Kind::PrimeFieldToTruncatedPoly: return target_.nilpotency() == 1;
      case Kind::Composite:
        for (const auto& h : steps_)
          if (!h.is_surjective()) return false;
        return true;
      default: return true;
    }
  }

  /// Surjective with every kernel element nilpotent (so the kernel lies in the
  /// Jacobson radical). True for the identity, Z/m -> Z/m' when every prime
  /// factor of m divides m', and the e-adic truncations.
  bool has_nilpotent_kernel() const {
    switch (kind_) {
      case Kind::Identity:
      case Kind::TruncatedPolyToPrimeField:
      case Kind::TruncatedPolyTruncate: return true;
      case Kind::PrimeFieldToTruncatedPoly: return target_.nilpotency() == 1;
      case Kind::IntegersModToIntegersMod: {
        // m | m'^k for large k  <=>  rad(m) | m'
        Integer m = source_.modulus(), g;
        while ((g = gcd(m, target_.modulus())) > 1)
          while (m % g == 0) m /= g;
        return m == 1;
      }
      case Kind::Composite:
        for (const auto& h : steps_)
          if (!h.has_nilpotent_kernel()) return false;
        return true;
      default: return false;
    }
  }

  /// Canonical-representative lift of a target element (surjective homs only).
  Elem section(const Elem& b) const {
    switch (kind_) {
      case Kind::Identity: return b;
      case Kind::IntToPrimeField:
      case Kind::IntToIntegersMod:
      case Kind::IntegersModToIntegersMod: return source_.from_integer(b.integer());
      case Kind::TruncatedPolyToPrimeField: return source_.from_integer(b.integer());
      case Kind::TruncatedPolyTruncate: {
        TruncatedCoeffs c(static_cast<std::size_t>(source_.nilpotency()), 0);
        std::copy(b.coeffs().begin(), b.coeffs().end(), c.begin());
        return Elem(std::move(c));
      }
      case Kind::PrimeFieldToTruncatedPoly:
        if (target_.nilpotency() == 1) return source_.from_int(b.coeffs()[0]);
        break;
      case Kind::IntToTruncatedPoly:
        if (target_.nilpotency() == 1) return source_.from_int(b.coeffs()[0]);
        break;
      case Kind::Composite: {
        Elem x = b;
        for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) x = it->section(x);
        return x;
      }
      default: break;
    }
    fail(ErrorKind::InvalidArgument, "no section for non-surjective map " + describe());
  }

  std::string describe() const { return source_.spec() + " -> " + target_.spec(); }

  /// g after f.
  friend RingHom compose(const RingHom& g, const RingHom& f) {
    if (!(f.target_ == g.source_))
      fail(ErrorKind::IncompatibleRing, "cannot compose " + g.describe() + " after " + f.describe());
    if (f.kind_ == Kind::Identity) return g;
    if (g.kind_ == Kind::Identity) return f;
    // Homs out of Z, Z/m and F_p are unique, as are e-preserving truncations;
    // only e -> 0 followed by F_p -> F_p[e]/(e^n) leaves the canonical family.
    bool through_prime_field = f.target_.kind() == Ring::Kind::PrimeField;
    if (f.source_.kind() == Ring::Kind::TruncatedPoly && through_prime_field &&
        g.target_.kind() == Ring::Kind::TruncatedPoly && g.target_.nilpotency() > 1) {
      RingHom h(Kind::Composite, f.source_, g.target_);
      h.steps_ = flatten(f);
      for (auto& s : flatten(g)) h.steps_.push_back(std::move(s));
      return h;
    }
    return canonical(f.source_, g.target_);
  }

 private:
  RingHom(Kind kind, Ring source, Ring target)
      : kind_(kind), source_(std::move(source)), target_(std::move(target)) {}

  static std::vector<RingHom> flatten(const RingHom& h) {
    if (h.kind_ == Kind::Composite) return h.steps_;
    return {h};
  }

  Kind kind_;
  Ring source_;
  Ring target_;
  std::vector<RingHom> steps_;
};

/// Entrywise image of a matrix under a ring hom.
inline Matrix apply_hom(const RingHom& h, const Matrix& m) {
  if (!(m.ring() == h.source()))
    fail(ErrorKind::IncompatibleRing,
         "matrix over " + m.ring().spec() + " but hom starts at " + h.source().spec());
  Matrix out(h.target(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = h.apply(m(i, j));
  return out;
}

}  // namespace quivlat
