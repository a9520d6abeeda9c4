#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "quivlat/error.hpp"
#include "quivlat/matrix.hpp"
#include "quivlat/ring.hpp"

namespace quivlat {

enum class NormalFormKind { Smith, ReducedEchelon, Howell };

/// left * [M; 0] * right = nf. padded_rows zero rows are appended to M before
/// the transform applies (only Howell forms need them, for annihilator rows).
struct NormalFormResult {
  Matrix nf;
  Matrix left;
  Matrix right;
  NormalFormKind kind;
  std::size_t padded_rows = 0;
};

struct EchelonForm {
  Matrix form;
  Matrix left;  // empty unless requested
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  std::size_t padded_rows = 0;
};

struct SmithForm {
  Matrix diagonal;
  Matrix left;
  Matrix left_inverse;
  Matrix right;
};

namespace detail {

inline Elem euclid_quotient(const Ring& ring, const Elem& x, const Elem& pivot) {
  if (ring.kind() == Ring::Kind::Integers) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.integer().get_mpz_t(), pivot.integer().get_mpz_t());
    return Elem(q);
  }
  return *ring.exact_div(x, pivot);
}

/// Row operations applied to a working matrix and mirrored onto an optional
/// transform U (U <- E U) and its inverse (Uinv <- Uinv E^-1).
struct RowOps {
  Matrix& work;
  Matrix* left = nullptr;
  Matrix* left_inv = nullptr;

  void swap(std::size_t i, std::size_t j) {
    work.swap_rows(i, j);
    if (left) left->swap_rows(i, j);
    if (left_inv) left_inv->swap_cols(i, j);
  }
  void add_multiple(std::size_t i, std::size_t j, const Elem& q) {
    work.add_row_multiple(i, j, q);
    if (left) left->add_row_multiple(i, j, q);
    if (left_inv) left_inv->add_col_multiple(j, i, work.ring().neg(q));
  }
  void scale(std::size_t i, const Elem& u) {
    work.scale_row(i, u);
    if (left) left->scale_row(i, u);
    if (left_inv) left_inv->scale_col(i, work.ring().inverse(u));
  }
  void combine(std::size_t i, std::size_t j, const Gcdex& g) {
    work.combine_rows(i, j, g);
    if (left) left->combine_rows(i, j, g);
    if (left_inv) {
      const Ring& r = work.ring();
      Elem det_inv = r.inverse(r.sub(r.mul(g.s, g.v), r.mul(g.t, g.u)));
      Gcdex inv{r.mul(g.v, det_inv), r.neg(r.mul(g.u, det_inv)), r.neg(r.mul(g.t, det_inv)),
                r.mul(g.s, det_inv)};
      left_inv->combine_cols(i, j, inv);
    }
  }
};

/// Clears column k strictly below row r, collecting a generator of the ideal
/// spanned by the column entries into position (r, k).
inline void clear_column(RowOps& ops, std::size_t r, std::size_t k) {
  Matrix& h = ops.work;
  const Ring& ring = h.ring();
  if (ring.has_euclidean_pivots()) {
    while (true) {
      std::size_t best = h.rows();
      Integer best_size;
      for (std::size_t i = r; i < h.rows(); ++i) {
        if (ring.is_zero(h(i, k))) continue;
        Integer sz = ring.pivot_size(h(i, k));
        if (best == h.rows() || sz < best_size) {
          best = i;
          best_size = sz;
        }
      }
      if (best == h.rows()) return;
      ops.swap(r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < h.rows(); ++i) {
        if (ring.is_zero(h(i, k))) continue;
        ops.add_multiple(i, r, ring.neg(euclid_quotient(ring, h(i, k), h(r, k))));
        if (!ring.is_zero(h(i, k))) clean = false;
      }
      if (clean) return;
    }
  }
  for (std::size_t i = r + 1; i < h.rows(); ++i)
    if (!ring.is_zero(h(i, k))) ops.combine(r, i, ring.gcdex(h(r, k), h(i, k)));
}

/// Column analogue of clear_column on row r from column k on, with right
/// transform V <- V E.
inline void clear_row(Matrix& d, Matrix& right, std::size_t r, std::size_t k) {
  const Ring& ring = d.ring();
  if (ring.has_euclidean_pivots()) {
    while (true) {
      std::size_t best = d.cols();
      Integer best_size;
      for (std::size_t j = k; j < d.cols(); ++j) {
        if (ring.is_zero(d(r, j))) continue;
        Integer sz = ring.pivot_size(d(r, j));
        if (best == d.cols() || sz < best_size) {
          best = j;
          best_size = sz;
        }
      }
      if (best == d.cols()) return;
      d.swap_cols(k, best);
      right.swap_cols(k, best);
      bool clean = true;
      for (std::size_t j = k + 1; j < d.cols(); ++j) {
        if (ring.is_zero(d(r, j))) continue;
        Elem q = ring.neg(euclid_quotient(ring, d(r, j), d(r, k)));
        d.add_col_multiple(j, k, q);
        right.add_col_multiple(j, k, q);
        if (!ring.is_zero(d(r, j))) clean = false;
      }
      if (clean) return;
    }
  }
  for (std::size_t j = k + 1; j < d.cols(); ++j) {
    if (ring.is_zero(d(r, j))) continue;
    Gcdex g = ring.gcdex(d(r, k), d(r, j));
    d.combine_cols(k, j, g);
    right.combine_cols(k, j, g);
  }
}

}  // namespace detail

/// Howell form (strong echelon form) by row operations. Over a field this is
/// the reduced row echelon form and over Z the Hermite normal form; over Z/m
/// and F_p[e]/(e^n) annihilator rows are folded in so that the nonzero rows
/// have the Howell property: every element of the row span whose first k
/// entries vanish is a combination of the rows with pivot column >= k.
inline EchelonForm howell_form(const Matrix& a, bool with_transform = false) {
  const Ring& ring = a.ring();
  EchelonForm out{a, with_transform ? Matrix::identity(ring, a.rows()) : Matrix(), {}, 0};
  Matrix& h = out.form;
  detail::RowOps ops{h, with_transform ? &out.left : nullptr, nullptr};

  std::size_t r = 0;
  for (std::size_t k = 0; k < h.cols() && r < h.rows(); ++k) {
    detail::clear_column(ops, r, k);
    if (ring.is_zero(h(r, k))) continue;
    Elem u = ring.unit_normalizer(h(r, k));
    if (!ring.is_one(u)) ops.scale(r, u);

    Elem ann = ring.annihilator(h(r, k));
    if (!ring.is_zero(ann)) {
      bool nonzero = false;
      for (std::size_t j = k + 1; j < h.cols() && !nonzero; ++j)
        nonzero = !ring.is_zero(ring.mul(ann, h(r, j)));
      if (nonzero) {
        std::size_t z = r + 1;
        while (z < h.rows() && !h.row_is_zero(z)) ++z;
        if (z == h.rows()) {
          h.append_zero_row();
          ++out.padded_rows;
          if (with_transform)
            out.left = Matrix::block_diagonal(ring, {out.left, Matrix::identity(ring, 1)});
        }
        ops.add_multiple(z, r, ann);
      }
    }
    out.pivots.emplace_back(r, k);
    ++r;
  }

  for (auto [pr, pk] : out.pivots)
    for (std::size_t i = 0; i < pr; ++i) {
      if (ring.is_zero(h(i, pk))) continue;
      auto [q, rem] = ring.divmod(h(i, pk), h(pr, pk));
      if (!ring.is_zero(q)) ops.add_multiple(i, pr, ring.neg(q));
    }
  return out;
}

/// Smith normal form U A V = D with d_1 | d_2 | ... canonical and zeros last.
/// Works over every supported ring (all are elementary divisor rings).
inline SmithForm smith_form(const Matrix& a) {
  const Ring& ring = a.ring();
  SmithForm s{a, Matrix::identity(ring, a.rows()), Matrix::identity(ring, a.rows()),
              Matrix::identity(ring, a.cols())};
  Matrix& d = s.diagonal;
  detail::RowOps ops{d, &s.left, &s.left_inverse};
  const std::size_t n = std::min(d.rows(), d.cols());

  for (std::size_t t = 0; t < n; ++t) {
    std::size_t pi = d.rows(), pj = d.cols();
    Integer best;
    for (std::size_t i = t; i < d.rows(); ++i)
      for (std::size_t j = t; j < d.cols(); ++j) {
        if (ring.is_zero(d(i, j))) continue;
        Integer sz = ring.pivot_size(d(i, j));
        if (pi == d.rows() || sz < best) {
          pi = i;
          pj = j;
          best = sz;
        }
      }
    if (pi == d.rows()) break;
    ops.swap(t, pi);
    d.swap_cols(t, pj);
    s.right.swap_cols(t, pj);

    while (true) {
      detail::clear_column(ops, t, t);
      detail::clear_row(d, s.right, t, t);
      bool column_clean = true;
      for (std::size_t i = t + 1; i < d.rows(); ++i)
        if (!ring.is_zero(d(i, t))) column_clean = false;
      if (!column_clean) continue;
      std::size_t bad = d.rows();
      for (std::size_t i = t + 1; i < d.rows() && bad == d.rows(); ++i)
        for (std::size_t j = t + 1; j < d.cols(); ++j)
          if (!ring.divides(d(t, t), d(i, j))) {
            bad = i;
            break;
          }
      if (bad == d.rows()) break;
      ops.add_multiple(t, bad, ring.one());
    }
    Elem u = ring.unit_normalizer(d(t, t));
    if (!ring.is_one(u)) ops.scale(t, u);
  }
  return s;
}

/// Ring-appropriate canonical form: Smith over Z, reduced echelon over fields,
/// Howell over Z/m and F_p[e]/(e^n).
inline NormalFormResult normal_form(const Matrix& m) {
  const Ring& ring = m.ring();
  if (ring.kind() == Ring::Kind::Integers) {
    SmithForm s = smith_form(m);
    return {s.diagonal, s.left, s.right, NormalFormKind::Smith, 0};
  }
  EchelonForm e = howell_form(m, true);
  NormalFormKind kind = (ring.kind() == Ring::Kind::IntegersMod || ring.kind() == Ring::Kind::TruncatedPoly)
                            ? NormalFormKind::Howell
                            : NormalFormKind::ReducedEchelon;
  return {e.form, e.left, Matrix::identity(ring, m.cols()), kind, e.padded_rows};
}

/// Generators of {x : A x = 0} as columns. A basis over Z and fields; a
/// Howell-canonical generating set over Z/m and F_p[e]/(e^n).
inline Matrix kernel_basis(const Matrix& a) {
  const Ring& ring = a.ring();
  const std::size_t m = a.rows(), n = a.cols();
  Matrix aug = Matrix::hstack(ring, n, {a.transpose(), Matrix::identity(ring, n)});
  EchelonForm e = howell_form(aug);
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < e.form.rows(); ++i)
    if (e.form.row_is_zero(i) == false) {
      bool first_block_zero = true;
      for (std::size_t j = 0; j < m && first_block_zero; ++j)
        first_block_zero = ring.is_zero(e.form(i, j));
      if (first_block_zero) rows.push_back(i);
    }
  Matrix k(ring, n, rows.size());
  for (std::size_t c = 0; c < rows.size(); ++c)
    for (std::size_t j = 0; j < n; ++j) k(j, c) = e.form(rows[c], m + j);
  return k;
}

/// Some X with A X = B, or nullopt if none exists.
inline std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (!(a.ring() == b.ring())) fail(ErrorKind::IncompatibleRing, "solve over different rings");
  if (a.rows() != b.rows()) fail(ErrorKind::DimensionMismatch, "solve: row counts differ");
  const Ring& ring = a.ring();
  const std::size_t m = a.rows(), n = a.cols();
  Matrix aug = Matrix::hstack(ring, n, {a.transpose(), Matrix::identity(ring, n)});
  EchelonForm e = howell_form(aug);
  std::vector<std::size_t> pivot_row(m, e.form.rows());
  for (auto [pr, pk] : e.pivots)
    if (pk < m) pivot_row[pk] = pr;

  Matrix x(ring, n, b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    std::vector<Elem> w(m);
    for (std::size_t i = 0; i < m; ++i) w[i] = b(i, c);
    for (std::size_t k = 0; k < m; ++k) {
      if (ring.is_zero(w[k])) continue;
      std::size_t pr = pivot_row[k];
      if (pr == e.form.rows()) return std::nullopt;
      auto [q, rem] = ring.divmod(w[k], e.form(pr, k));
      if (!ring.is_zero(rem)) return std::nullopt;
      for (std::size_t j = k; j < m; ++j)
        if (!ring.is_zero(e.form(pr, j))) w[j] = ring.sub(w[j], ring.mul(q, e.form(pr, j)));
      for (std::size_t j = 0; j < n; ++j)
        if (!ring.is_zero(e.form(pr, m + j))) x(j, c) = ring.add(x(j, c), ring.mul(q, e.form(pr, m + j)));
    }
  }
  return x;
}

/// A finitely generated module in invariant-factor form: the module is
/// the direct sum of R/(d_i), d_1 | d_2 | ..., units omitted, zeros (free
/// summands) last. generator_images holds one ambient vector per summand.
struct ModulePresentation {
  Ring ring = Ring::integers();
  std::size_t generators = 0;
  Matrix relations;
  std::vector<Elem> invariant_factors;
  Matrix generator_images;

  bool is_zero() const { return invariant_factors.empty(); }
  std::size_t free_rank() const {
    return static_cast<std::size_t>(std::count_if(invariant_factors.begin(), invariant_factors.end(),
                                                  [&](const Elem& d) { return ring.is_zero(d); }));
  }
  bool is_free() const { return free_rank() == invariant_factors.size(); }
  std::vector<std::string> invariant_strings() const {
    std::vector<std::string> out;
    for (const auto& d : invariant_factors) out.push_back(ring.format(d));
    return out;
  }
};

/// Cokernel of A: (free module on A.rows() generators) / (column span of A).
inline ModulePresentation cokernel(const Matrix& a) {
  const Ring& ring = a.ring();
  SmithForm s = smith_form(a);
  ModulePresentation p;
  p.ring = ring;
  p.generators = a.rows();
  p.relations = a;
  std::vector<std::size_t> keep;
  const std::size_t n = std::min(a.rows(), a.cols());
  for (std::size_t t = 0; t < a.rows(); ++t) {
    Elem d = t < n ? s.diagonal(t, t) : ring.zero();
    if (ring.is_unit(d)) continue;
    p.invariant_factors.push_back(d);
    keep.push_back(t);
  }
  p.generator_images = Matrix(ring, a.rows(), keep.size());
  for (std::size_t c = 0; c < keep.size(); ++c)
    for (std::size_t i = 0; i < a.rows(); ++i) p.generator_images(i, c) = s.left_inverse(i, keep[c]);
  return p;
}

/// Presentation of the submodule generated by the columns of g; the
/// generator images are expressed in the ambient coordinates of g.
inline ModulePresentation submodule_presentation(const Matrix& g) {
  Matrix rel = kernel_basis(g);
  ModulePresentation p = cokernel(rel);
  p.generator_images = g * p.generator_images;
  return p;
}

/// Distinct prime factors of a positive integer with multiplicities.
inline std::vector<std::pair<Integer, unsigned long>> factorize(Integer m) {
  std::vector<std::pair<Integer, unsigned long>> out;
  for (Integer p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    unsigned long k = 0;
    while (m % p == 0) {
      m /= p;
      ++k;
    }
    out.emplace_back(p, k);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

/// n if the module is projective of constant rank n; nullopt if projective of
/// non-constant rank (only possible over Z/m with m not a prime power).
/// Throws NotProjective otherwise.
inline std::optional<std::size_t> constant_rank(const ModulePresentation& p) {
  const Ring& ring = p.ring;
  if (ring.kind() != Ring::Kind::IntegersMod) {
    if (!p.is_free())
      fail(ErrorKind::NotProjective, "torsion invariant factor over " + ring.spec());
    return p.free_rank();
  }
  std::optional<std::size_t> rank;
  bool constant = true;
  for (auto [prime, k] : factorize(ring.modulus())) {
    Integer local_order;
    mpz_pow_ui(local_order.get_mpz_t(), prime.get_mpz_t(), k);
    std::size_t local = 0;
    for (const auto& d : p.invariant_factors) {
      const Integer& x = d.integer();
      if (x == 0 || x % local_order == 0)
        ++local;
      else if (x % prime == 0)
        fail(ErrorKind::NotProjective, "factor " + x.get_str() + " is not locally free at " + prime.get_str());
    }
    if (!rank) rank = local;
    else if (*rank != local) constant = false;
  }
  if (!constant) return std::nullopt;
  return rank.value_or(0);
}

/// True iff a square matrix is invertible over its ring.
inline bool is_invertible(const Matrix& a) {
  if (a.rows() != a.cols()) return false;
  SmithForm s = smith_form(a);
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (!a.ring().is_unit(s.diagonal(i, i))) return false;
  return true;
}

inline std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  auto x = solve(a, Matrix::identity(a.ring(), a.rows()));
  if (x && (*x * a) == Matrix::identity(a.ring(), a.rows())) return x;
  return std::nullopt;
}

/// True iff x |-> A x is injective.
inline bool is_injective(const Matrix& a) { return kernel_basis(a).cols() == 0; }

/// True iff x |-> A x is surjective.
inline bool is_surjective(const Matrix& a) { return cokernel(a).is_zero(); }

}  // namespace quivlat
