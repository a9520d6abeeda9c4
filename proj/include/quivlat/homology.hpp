#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quivlat/error.hpp"
#include "quivlat/normal_form.hpp"
#include "quivlat/quiver.hpp"

namespace quivlat {

/// Coordinates of the two-term complex
///   C0 = (+)_i Hom_R(X_i, Y_i)  --d-->  C1 = (+)_a Hom_R(X_t(a), Y_h(a)),
/// vertex blocks then arrow blocks, each block flattened column-major.
class HomComplex {
 public:
  HomComplex(const Rep& x, const Rep& y) : x_(x), y_(y) {
    require_same_base(x, y);
    const Quiver& q = x.quiver();
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
      vertex_offset_.push_back(c0_);
      c0_ += x.dim(v) * y.dim(v);
    }
    for (const auto& ar : q.arrows()) {
      arrow_offset_.push_back(c1_);
      c1_ += x.dim(ar.tail) * y.dim(ar.head);
    }
  }

  std::size_t c0_size() const { return c0_; }
  std::size_t c1_size() const { return c1_; }

  /// d(f)_a = Y_a f_t(a) - f_h(a) X_a.
  Matrix differential() const {
    const Ring& ring = x_.ring();
    const Quiver& q = x_.quiver();
    Matrix d(ring, c1_, c0_);
    const Elem minus_one = ring.neg(ring.one());
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      const auto& ar = q.arrow(a);
      const std::size_t t = ar.tail, h = ar.head;
      const std::size_t yt = y_.dim(t), xh = x_.dim(h);
      const std::size_t rows = y_.dim(h), cols = x_.dim(t);
      const Matrix& ya = y_.mat(a);
      const Matrix& xa = x_.mat(a);
      for (std::size_t c = 0; c < cols; ++c)
        for (std::size_t r = 0; r < rows; ++r) {
          const std::size_t row = arrow_offset_[a] + c * rows + r;
          // (Y_a f_t)(r, c) = sum_k Y_a(r, k) f_t(k, c)
          for (std::size_t k = 0; k < yt; ++k)
            if (!ring.is_zero(ya(r, k))) {
              Elem& e = d(row, vertex_offset_[t] + c * yt + k);
              e = ring.add(e, ya(r, k));
            }
          // (f_h X_a)(r, c) = sum_k f_h(r, k) X_a(k, c)
          for (std::size_t k = 0; k < xh; ++k)
            if (!ring.is_zero(xa(k, c))) {
              Elem& e = d(row, vertex_offset_[h] + k * y_.dim(h) + r);
              e = ring.add(e, ring.mul(minus_one, xa(k, c)));
            }
        }
    }
    return d;
  }

  std::vector<Matrix> vertex_maps(const Matrix& v, std::size_t col = 0) const {
    std::vector<Matrix> maps;
    for (std::size_t i = 0; i < x_.quiver().vertex_count(); ++i)
      maps.push_back(unflatten(v, col, vertex_offset_[i], y_.dim(i), x_.dim(i)));
    return maps;
  }

  std::vector<Matrix> arrow_maps(const Matrix& v, std::size_t col = 0) const {
    std::vector<Matrix> maps;
    const Quiver& q = x_.quiver();
    for (std::size_t a = 0; a < q.arrow_count(); ++a)
      maps.push_back(unflatten(v, col, arrow_offset_[a], y_.dim(q.arrow(a).head), x_.dim(q.arrow(a).tail)));
    return maps;
  }

  RepMorphism morphism(const Matrix& v, std::size_t col = 0) const {
    return RepMorphism(x_, y_, vertex_maps(v, col));
  }

  /// Column vector in C0 coordinates of a tuple of vertex maps.
  Matrix flatten_vertex_maps(const std::vector<Matrix>& maps) const {
    Matrix v(x_.ring(), c0_, 1);
    for (std::size_t i = 0; i < maps.size(); ++i) flatten_into(v, vertex_offset_[i], maps[i]);
    return v;
  }

 private:
  Matrix unflatten(const Matrix& v, std::size_t col, std::size_t off, std::size_t rows, std::size_t cols) const {
    Matrix m(x_.ring(), rows, cols);
    for (std::size_t c = 0; c < cols; ++c)
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = v(off + c * rows + r, col);
    return m;
  }

  static void flatten_into(Matrix& v, std::size_t off, const Matrix& m) {
    for (std::size_t c = 0; c < m.cols(); ++c)
      for (std::size_t r = 0; r < m.rows(); ++r) v(off + c * m.rows() + r, 0) = m(r, c);
  }

  Rep x_, y_;
  std::vector<std::size_t> vertex_offset_, arrow_offset_;
  std::size_t c0_ = 0, c1_ = 0;
};

struct HomExtResult {
  ModulePresentation hom;  // generator images in C0 coordinates
  ModulePresentation ext;  // generator images in C1 coordinates
  std::vector<RepMorphism> hom_generators;
  /// One tuple of arrow matrices per ext generator, in ext.invariant_factors order.
  std::vector<std::vector<Matrix>> ext_cocycles;
  Matrix differential;

  std::optional<std::size_t> hom_rank() const { return rank_of(hom); }
  std::optional<std::size_t> ext_rank() const { return rank_of(ext); }

 private:
  static std::optional<std::size_t> rank_of(const ModulePresentation& p) {
    try {
      return constant_rank(p);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NotProjective) return std::nullopt;
      throw;
    }
  }
};

inline HomExtResult hom_ext(const Rep& x, const Rep& y) {
  HomComplex cx(x, y);
  HomExtResult r;
  r.differential = cx.differential();
  r.hom = submodule_presentation(kernel_basis(r.differential));
  r.ext = cokernel(r.differential);
  for (std::size_t c = 0; c < r.hom.generator_images.cols(); ++c)
    r.hom_generators.push_back(cx.morphism(r.hom.generator_images, c));
  for (std::size_t c = 0; c < r.ext.generator_images.cols(); ++c)
    r.ext_cocycles.push_back(cx.arrow_maps(r.ext.generator_images, c));
  return r;
}

inline bool is_rigid(const Rep& x) { return hom_ext(x, x).ext.is_zero(); }

/// Rigid with End(X) free of rank one, generated by the identity.
inline bool is_exceptional(const Rep& x) {
  HomExtResult r = hom_ext(x, x);
  if (!r.ext.is_zero()) return false;
  if (r.hom.invariant_factors.size() != 1 || !x.ring().is_zero(r.hom.invariant_factors[0])) return false;
  HomComplex cx(x, x);
  Matrix id = cx.flatten_vertex_maps(RepMorphism::identity(x).maps());
  return solve(id, r.hom.generator_images).has_value();
}

/// Invariant factors of M (x) S for M = (+) R/(d_i), as a presentation over S.
inline std::vector<Elem> base_changed_invariants(const ModulePresentation& p, const RingHom& h) {
  std::vector<Elem> diag;
  for (const auto& d : p.invariant_factors) diag.push_back(h.apply(d));
  return cokernel(Matrix::diagonal(h.target(), diag)).invariant_factors;
}

/// Whether Ext(X,Y) (x) S and Ext(X^S, Y^S) have the same invariant factors.
inline bool check_base_change(const Rep& x, const Rep& y, const RingHom& h) {
  HomExtResult over_r = hom_ext(x, y);
  HomExtResult over_s = hom_ext(base_change(x, h), base_change(y, h));
  return base_changed_invariants(over_r.ext, h) == over_s.ext.invariant_factors;
}

/// (rank Hom, rank Ext) of a pair of rigid lattices. Both must be projective
/// of constant rank; anything else is reported as TheoremViolation.
inline std::pair<std::size_t, std::size_t> rigid_hom_ext_ranks(const Rep& x, const Rep& y) {
  HomExtResult r = hom_ext(x, y);
  auto rank = [](const ModulePresentation& p, const char* what) {
    std::optional<std::size_t> n;
    try {
      n = constant_rank(p);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotProjective) throw;
      fail(ErrorKind::TheoremViolation, std::string(what) + " is not projective: " + e.detail());
    }
    if (!n) fail(ErrorKind::TheoremViolation, std::string(what) + " is projective of non-constant rank");
    return *n;
  };
  return {rank(r.hom, "Hom"), rank(r.ext, "Ext")};
}

}  // namespace quivlat
