#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "quivlat/error.hpp"
#include "quivlat/homology.hpp"
#include "quivlat/isomorphism.hpp"
#include "quivlat/mutation.hpp"
#include "quivlat/quiver.hpp"

namespace quivlat {

enum class SchurVerdict { Yes, PrefilterFalse, BoundedFalse };

inline const char* schur_verdict_name(SchurVerdict v) {
  switch (v) {
    case SchurVerdict::Yes: return "yes";
    case SchurVerdict::PrefilterFalse: return "prefilter";
    case SchurVerdict::BoundedFalse: return "bounded";
  }
  return "?";
}

namespace detail {

inline void require_schur_input(const Quiver& q, const DimVector& a) {
  if (a.size() != q.vertex_count()) fail(ErrorKind::DimensionMismatch, "dims length differs from vertex count");
  if (a.is_zero()) fail(ErrorKind::InvalidArgument, "zero dimension vector");
  if (!q.is_acyclic()) fail(ErrorKind::CyclicQuiver, "quiver has an oriented cycle");
}

}  // namespace detail

/// Exceptional lattices over Z found in one incrementally explored braid
/// orbit, shared across queries. Owned by the caller; not thread-safe.
class ExceptionalCatalog {
 public:
  ExceptionalCatalog(const Quiver& q, std::size_t bound) : orbit_(q, Ring::integers(), bound) {}

  const Quiver& quiver() const { return orbit_.quiver(); }
  std::size_t bound() const { return orbit_.bound(); }

  SchurVerdict verdict(const DimVector& a) {
    detail::require_schur_input(quiver(), a);
    if (euler_form(quiver(), a, a) != 1) return SchurVerdict::PrefilterFalse;
    if (a.total() > bound()) return SchurVerdict::BoundedFalse;
    return orbit_.find(a) ? SchurVerdict::Yes : SchurVerdict::BoundedFalse;
  }

  /// The first exceptional Z-lattice of dims a met in the orbit.
  Rep integral(const DimVector& a) {
    switch (verdict(a)) {
      case SchurVerdict::PrefilterFalse:
        fail(ErrorKind::NotSchurRoot, a.to_string() + " has Euler form " +
                                          std::to_string(euler_form(quiver(), a, a)) + ", not 1");
      case SchurVerdict::BoundedFalse:
        fail(ErrorKind::BoundExceeded, "no exceptional rep of dims " + a.to_string() + " within bound " +
                                           std::to_string(bound()));
      case SchurVerdict::Yes: break;
    }
    return orbit_.find(a)->rep;
  }

  /// Up to n different presentations of dims a, each reached by its own braid word.
  std::vector<OrbitHit> paths(const DimVector& a, std::size_t n) { return orbit_.find_all(a, n); }

  /// An exceptional Z-lattice of dims a reached independently of the main
  /// orbit: breadth-first from the projective sequence, whose items are built
  /// from paths rather than by mutation. The hit's path is relative to that start.
  std::optional<OrbitHit> via_projectives(const DimVector& a) {
    detail::require_schur_input(quiver(), a);
    if (!projective_orbit_) {
      ExcSequence start = projective_sequence(quiver(), Ring::integers());
      for (const auto& x : start.items())
        if (x.dims().total() > bound()) return std::nullopt;
      projective_orbit_.emplace(std::move(start), std::vector<BraidStep>{}, bound(), 1);
    }
    return projective_orbit_->find(a);
  }

 private:
  BraidOrbit orbit_;
  std::optional<BraidOrbit> projective_orbit_;
};

/// Tits-form prefilter, then a bounded braid-orbit search over Q.
inline SchurVerdict schur_verdict(const Quiver& q, const DimVector& a, std::size_t bound) {
  detail::require_schur_input(q, a);
  if (euler_form(q, a, a) != 1) return SchurVerdict::PrefilterFalse;
  if (a.total() > bound) return SchurVerdict::BoundedFalse;
  return orbit_search(q, a, bound, Ring::rationals()) ? SchurVerdict::Yes : SchurVerdict::BoundedFalse;
}

inline bool is_real_schur_root(const Quiver& q, const DimVector& a, std::size_t bound) {
  return schur_verdict(q, a, bound) == SchurVerdict::Yes;
}

/// Exceptional lattice of dims a over Z (integral mutations), moved to `ring`.
inline Rep exceptional_lattice(ExceptionalCatalog& catalog, const DimVector& a, const Ring& ring) {
  Rep x = base_change(catalog.integral(a), ring);
  if (!is_exceptional(x))
    fail(ErrorKind::TheoremViolation, "base change of exceptional lattice " + a.to_string() + " to " + ring.spec() +
                                          " is not exceptional");
  return x;
}

inline Rep exceptional_lattice(const Quiver& q, const DimVector& a, const Ring& ring, std::size_t bound) {
  ExceptionalCatalog catalog(q, bound);
  return exceptional_lattice(catalog, a, ring);
}

struct GenericDims {
  std::size_t hom_rank;
  std::size_t ext_rank;
};

inline GenericDims generic_dims(ExceptionalCatalog& catalog, const DimVector& a, const DimVector& b) {
  Rep x = exceptional_lattice(catalog, a, Ring::rationals());
  Rep y = exceptional_lattice(catalog, b, Ring::rationals());
  HomExtResult r = hom_ext(x, y);
  GenericDims g{r.hom.free_rank(), r.ext.free_rank()};
  if (static_cast<long>(g.hom_rank) - static_cast<long>(g.ext_rank) != euler_form(catalog.quiver(), a, b))
    fail(ErrorKind::TheoremViolation, "hom - ext differs from the Euler form");
  return g;
}

inline GenericDims generic_dims(const Quiver& q, const DimVector& a, const DimVector& b, std::size_t bound) {
  ExceptionalCatalog catalog(q, bound);
  return generic_dims(catalog, a, b);
}

struct RigidSummand {
  Rep rep;
  std::size_t multiplicity;
};

/// summands are listed in an exceptional order: Hom(X_i, X_j) = 0 for i > j.
/// evaluation_maps[i] is theta_i : X_i (x) R^{m_i} -> (quotient of X) used when
/// peeling, and isomorphism : (+)_i X_i (x) R^{m_i} -> X is the reassembled
/// certificate.
struct RigidDecomposition {
  std::vector<RigidSummand> summands;
  std::vector<RepMorphism> evaluation_maps;
  std::optional<RepMorphism> isomorphism;
  bool verified = false;

  /// (dims, multiplicity) sorted by dims.
  std::vector<std::pair<DimVector, std::size_t>> multiset() const {
    std::vector<std::pair<DimVector, std::size_t>> m;
    for (const auto& s : summands) m.emplace_back(s.rep.dims(), s.multiplicity);
    std::sort(m.begin(), m.end());
    return m;
  }

  Rep reassemble(const Ring& ring, const Quiver& q) const {
    Rep s = Rep::zero(ring, q);
    for (const auto& x : summands) s = direct_sum(s, tensor_free(x.rep, x.multiplicity));
    return s;
  }
};

namespace detail {

/// The field over which summand dims and multiplicities are determined.
inline Ring decomposition_field(const Ring& ring, long prime) {
  switch (ring.kind()) {
    case Ring::Kind::Integers: return Ring::prime_field(prime);
    case Ring::Kind::Rationals:
    case Ring::Kind::PrimeField: return ring;
    default: fail(ErrorKind::NotComputable, "decomposition needs Z, Q or a prime field, got " + ring.spec());
  }
}

inline Matrix hstack_maps(const Ring& ring, std::size_t rows, const std::vector<RepMorphism>& fs, std::size_t v) {
  std::vector<Matrix> parts;
  for (const auto& f : fs) parts.push_back(f.map(v));
  return Matrix::hstack(ring, rows, parts);
}

/// Vertex maps that are split injections (Smith invariants all units).
inline bool is_split_mono(const RepMorphism& f) {
  for (const auto& m : f.maps()) {
    if (m.cols() > m.rows()) return false;
    SmithForm s = smith_form(m);
    for (std::size_t i = 0; i < m.cols(); ++i)
      if (!m.ring().is_unit(s.diagonal(i, i))) return false;
  }
  return true;
}

/// Some morphism g : T -> X with p o g = target, where p : X -> C.
inline RepMorphism lift_through(const RepMorphism& p, const RepMorphism& target) {
  const Rep& t = target.source();
  HomExtResult h = hom_ext(t, p.source());
  HomComplex into_c(t, p.target());
  const Ring& ring = t.ring();
  Matrix images(ring, into_c.c0_size(), h.hom_generators.size());
  for (std::size_t j = 0; j < h.hom_generators.size(); ++j)
    images.set_block(0, j, into_c.flatten_vertex_maps(h.hom_generators[j].then(p).maps()));
  auto c = solve(images, into_c.flatten_vertex_maps(target.maps()));
  if (!c) fail(ErrorKind::TheoremViolation, "evaluation map does not lift to the original lattice");
  Matrix v = h.hom.generator_images * *c;
  return HomComplex(t, p.source()).morphism(v);
}

}  // namespace detail

/// Decomposes a rigid lattice over Z, Q or F_p as (+)_i X_i (x) R^{m_i} with
/// X_i exceptional. Dims and multiplicities are read off over a field (F_prime
/// for Z input); the summands are then peeled off over R one at a time.
inline RigidDecomposition decompose_rigid(const Rep& x, ExceptionalCatalog& catalog, long prime = 2) {
  const Ring& ring = x.ring();
  const Quiver& q = x.quiver();
  const Ring field = detail::decomposition_field(ring, prime);
  if (!q.is_acyclic()) fail(ErrorKind::CyclicQuiver, "quiver has an oriented cycle");
  if (!(catalog.quiver() == q)) fail(ErrorKind::IncompatibleBase, "catalog built for another quiver");
  if (!is_rigid(x)) fail(ErrorKind::NotRigid, "Ext(X,X) is nonzero");

  RigidDecomposition out;
  if (x.dims().is_zero()) {
    out.isomorphism = RepMorphism::identity(x);
    out.verified = true;
    return out;
  }

  // (1) candidate summand dims and their exceptional reps over the field.
  const Rep xf = base_change(x, RingHom::canonical(ring, field));
  std::vector<DimVector> cand;
  std::vector<Rep> cand_f;
  {
    const DimVector& a = x.dims();
    std::vector<std::size_t> c(q.vertex_count(), 0);
    std::function<void(std::size_t)> walk = [&](std::size_t v) {
      if (v == c.size()) {
        DimVector b(c);
        if (!b.is_zero() && catalog.verdict(b) == SchurVerdict::Yes) {
          cand.push_back(b);
          cand_f.push_back(exceptional_lattice(catalog, b, field));
        }
        return;
      }
      for (c[v] = 0; c[v] <= a[v]; ++c[v]) walk(v + 1);
      c[v] = 0;
    };
    walk(0);
  }
  const std::size_t n = cand.size();
  std::vector<std::vector<std::size_t>> hom(n, std::vector<std::size_t>(n)), ext = hom;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      HomExtResult r = hom_ext(cand_f[i], cand_f[j]);
      hom[i][j] = r.hom.free_rank();
      ext[i][j] = r.ext.free_rank();
    }
  std::vector<std::size_t> hom_into_x(n), hom_from_x(n);
  for (std::size_t i = 0; i < n; ++i) {
    hom_into_x[i] = hom_ext(cand_f[i], xf).hom.free_rank();
    hom_from_x[i] = hom_ext(xf, cand_f[i]).hom.free_rank();
  }

  // (2) multiplicities: sum m_i dims_i = dims X, pairwise Ext-orthogonal
  // support, and Hom dimensions to and from X consistent with X ~ (+) E_i^{m_i}.
  std::vector<std::vector<std::size_t>> solutions;
  {
    std::vector<std::size_t> m(n, 0);
    std::vector<std::size_t> rest = x.dims().components();
    std::function<void(std::size_t)> search = [&](std::size_t i) {
      if (i == n) {
        if (std::any_of(rest.begin(), rest.end(), [](std::size_t r) { return r != 0; })) return;
        for (std::size_t k = 0; k < n; ++k) {
          std::size_t into = 0, from = 0;
          for (std::size_t j = 0; j < n; ++j) {
            into += m[j] * hom[k][j];
            from += m[j] * hom[j][k];
          }
          if (into != hom_into_x[k] || from != hom_from_x[k]) return;
        }
        solutions.push_back(m);
        return;
      }
      search(i + 1);
      for (std::size_t j = 0; j < i; ++j)
        if (m[j] > 0 && (ext[i][j] || ext[j][i])) return;
      std::size_t added = 0;
      while (true) {
        bool fits = true;
        for (std::size_t v = 0; v < rest.size(); ++v) fits = fits && cand[i][v] <= rest[v];
        if (!fits) break;
        for (std::size_t v = 0; v < rest.size(); ++v) rest[v] -= cand[i][v];
        ++m[i];
        ++added;
        search(i + 1);
      }
      for (std::size_t v = 0; v < rest.size(); ++v) rest[v] += cand[i][v] * added;
      m[i] = 0;
    };
    search(0);
  }
  if (solutions.size() != 1)
    fail(ErrorKind::AmbiguousDecomposition,
         std::to_string(solutions.size()) + " summand combinations fit " + x.dims().to_string());
  const auto& mult = solutions[0];

  // (3) exceptional order: i before j whenever Hom(E_i, E_j) != 0, ties by dims.
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < n; ++i)
    if (mult[i]) support.push_back(i);
  std::vector<std::size_t> order;
  {
    std::vector<std::size_t> indeg(n, 0);
    for (std::size_t i : support)
      for (std::size_t j : support)
        if (i != j && hom[i][j]) ++indeg[j];
    auto later = [&](std::size_t i, std::size_t j) { return cand[j] < cand[i]; };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(later)> ready(later);
    for (std::size_t i : support)
      if (!indeg[i]) ready.push(i);
    while (!ready.empty()) {
      std::size_t i = ready.top();
      ready.pop();
      order.push_back(i);
      for (std::size_t j : support)
        if (j != i && hom[i][j] && --indeg[j] == 0) ready.push(j);
    }
    if (order.size() != support.size()) fail(ErrorKind::TheoremViolation, "summands admit no exceptional order");
  }

  // (4) peel from the end: theta : X_r (x) Hom(X_r, C) -> C is split mono and
  // C / image is the rest.
  for (std::size_t i : order) out.summands.push_back({exceptional_lattice(catalog, cand[i], ring), mult[i]});
  std::vector<RepMorphism> lifts(out.summands.size(), RepMorphism::identity(x));
  RepMorphism to_c = RepMorphism::identity(x);
  std::vector<RepMorphism> thetas;
  for (std::size_t k = out.summands.size(); k-- > 0;) {
    const RigidSummand& s = out.summands[k];
    const Rep& c = to_c.target();
    HomExtResult h = hom_ext(s.rep, c);
    if (!h.hom.is_free() || h.hom.free_rank() != s.multiplicity)
      fail(ErrorKind::PeelFailure, "Hom(X_" + std::to_string(k + 1) + ", C) is not free of rank " +
                                       std::to_string(s.multiplicity));
    Rep t = tensor_free(s.rep, s.multiplicity);
    std::vector<Matrix> maps;
    for (std::size_t v = 0; v < q.vertex_count(); ++v)
      maps.push_back(detail::hstack_maps(ring, c.dim(v), h.hom_generators, v));
    RepMorphism theta(t, c, std::move(maps));
    if (!detail::is_split_mono(theta))
      fail(ErrorKind::PeelFailure, "evaluation map of summand " + std::to_string(k + 1) + " is not split mono");
    lifts[k] = detail::lift_through(to_c, theta);
    thetas.insert(thetas.begin(), theta);
    to_c = to_c.then(cokernel_rep(theta).second);
  }
  if (!to_c.target().dims().is_zero())
    fail(ErrorKind::PeelFailure, "summands do not exhaust the lattice; left " + to_c.target().dims().to_string());
  out.evaluation_maps = std::move(thetas);

  // (5) certificate: the lifted evaluation maps side by side are an isomorphism.
  Rep sum = out.reassemble(ring, q);
  std::vector<Matrix> phi;
  for (std::size_t v = 0; v < q.vertex_count(); ++v)
    phi.push_back(detail::hstack_maps(ring, x.dim(v), lifts, v));
  RepMorphism iso(sum, x, std::move(phi));
  if (!is_vertexwise_invertible(iso))
    fail(ErrorKind::TheoremViolation, "reassembled evaluation maps are not an isomorphism");
  out.isomorphism = std::move(iso);
  out.verified = true;
  return out;
}

inline RigidDecomposition decompose_rigid(const Rep& x, long prime = 2, std::size_t bound = 60) {
  ExceptionalCatalog catalog(x.quiver(), std::min(bound, x.dims().total()));
  return decompose_rigid(x, catalog, prime);
}

/// Lifts a rigid rep over S along h : R -> S with nilpotent kernel using the
/// canonical-representative section; the lift is rigid and reduces to X.
inline Rep lift_rigid(const Rep& x, const RingHom& h) {
  if (!(x.ring() == h.target()))
    fail(ErrorKind::IncompatibleRing, "rep over " + x.ring().spec() + " but hom lands in " + h.target().spec());
  if (!h.has_nilpotent_kernel()) fail(ErrorKind::NotNilpotentKernel, h.describe() + " has a non-nilpotent kernel");
  if (!is_rigid(x)) fail(ErrorKind::NotRigid, "Ext(X,X) is nonzero");
  std::vector<Matrix> mats;
  for (const auto& m : x.mats()) {
    Matrix l(h.source(), m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) l(i, j) = h.section(m(i, j));
    mats.push_back(std::move(l));
  }
  Rep lifted(h.source(), x.quiver(), x.dims(), std::move(mats));
  if (!is_rigid(lifted)) fail(ErrorKind::TheoremViolation, "lift of a rigid rep is not rigid");
  if (!(base_change(lifted, h) == x)) fail(ErrorKind::TheoremViolation, "lift does not reduce to the input");
  return lifted;
}

}  // namespace quivlat
