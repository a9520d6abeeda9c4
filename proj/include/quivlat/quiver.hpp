#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "quivlat/error.hpp"
#include "quivlat/matrix.hpp"
#include "quivlat/normal_form.hpp"
#include "quivlat/ring_hom.hpp"

namespace quivlat {

/// Arrow tail -> head, vertices 0-based.
struct Arrow {
  std::size_t tail;
  std::size_t head;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

class Quiver {
 public:
  Quiver() = default;
  Quiver(std::size_t vertex_count, std::vector<Arrow> arrows)
      : vertex_count_(vertex_count), arrows_(std::move(arrows)) {
    if (vertex_count_ == 0) fail(ErrorKind::InvalidArgument, "quiver needs at least one vertex");
    for (const auto& a : arrows_)
      if (a.tail >= vertex_count_ || a.head >= vertex_count_)
        fail(ErrorKind::InvalidArgument, "arrow endpoint out of range");
  }

  /// Arrows given as 1-based (tail, head) pairs.
  static Quiver from_one_based(std::size_t vertex_count, const std::vector<std::pair<std::size_t, std::size_t>>& arrows) {
    std::vector<Arrow> as;
    for (auto [t, h] : arrows) {
      if (t == 0 || h == 0) fail(ErrorKind::InvalidArgument, "vertices are 1-indexed");
      as.push_back({t - 1, h - 1});
    }
    return Quiver(vertex_count, std::move(as));
  }

  /// Linearly oriented A_n: 1 -> 2 -> ... -> n.
  static Quiver linear(std::size_t n) {
    std::vector<Arrow> as;
    for (std::size_t i = 0; i + 1 < n; ++i) as.push_back({i, i + 1});
    return Quiver(n, std::move(as));
  }

  /// Two vertices and m parallel arrows 1 -> 2 (m = 2 is the Kronecker quiver).
  static Quiver generalized_kronecker(std::size_t m) {
    return Quiver(2, std::vector<Arrow>(m, Arrow{0, 1}));
  }

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t arrow_count() const { return arrows_.size(); }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(std::size_t a) const { return arrows_.at(a); }

  /// Lexicographically smallest order with every arrow's tail before its head;
  /// nullopt if the quiver has an oriented cycle (loops included).
  std::optional<std::vector<std::size_t>> topological_order() const {
    std::vector<std::size_t> indeg(vertex_count_, 0);
    for (const auto& a : arrows_) ++indeg[a.head];
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t v = 0; v < vertex_count_; ++v)
      if (indeg[v] == 0) ready.push(v);
    std::vector<std::size_t> order;
    while (!ready.empty()) {
      std::size_t v = ready.top();
      ready.pop();
      order.push_back(v);
      for (const auto& a : arrows_)
        if (a.tail == v && --indeg[a.head] == 0) ready.push(a.head);
    }
    if (order.size() != vertex_count_) return std::nullopt;
    return order;
  }

  bool is_acyclic() const { return topological_order().has_value(); }

  friend bool operator==(const Quiver&, const Quiver&) = default;

 private:
  std::size_t vertex_count_ = 0;
  std::vector<Arrow> arrows_;
};

/// Nonnegative integer vector indexed by the vertices.
class DimVector {
 public:
  DimVector() = default;
  explicit DimVector(std::vector<std::size_t> c) : c_(std::move(c)) {}
  DimVector(std::initializer_list<std::size_t> c) : c_(c) {}
  static DimVector zero(std::size_t n) { return DimVector(std::vector<std::size_t>(n, 0)); }
  static DimVector unit(std::size_t n, std::size_t i) {
    DimVector d = zero(n);
    d.c_.at(i) = 1;
    return d;
  }

  std::size_t size() const { return c_.size(); }
  std::size_t operator[](std::size_t i) const { return c_[i]; }
  std::size_t& operator[](std::size_t i) { return c_[i]; }
  const std::vector<std::size_t>& components() const { return c_; }
  std::size_t total() const { return std::accumulate(c_.begin(), c_.end(), std::size_t{0}); }
  bool is_zero() const { return total() == 0; }

  DimVector operator+(const DimVector& o) const {
    if (o.size() != size()) fail(ErrorKind::DimensionMismatch, "dimension vectors of different length");
    DimVector r = *this;
    for (std::size_t i = 0; i < size(); ++i) r.c_[i] += o.c_[i];
    return r;
  }
  DimVector operator*(std::size_t k) const {
    DimVector r = *this;
    for (auto& x : r.c_) x *= k;
    return r;
  }
  /// Componentwise <=.
  bool fits_in(const DimVector& o) const {
    for (std::size_t i = 0; i < size(); ++i)
      if (c_[i] > o.c_[i]) return false;
    return true;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < size(); ++i) s += (i ? "," : "") + std::to_string(c_[i]);
    return s + ")";
  }

  friend bool operator==(const DimVector&, const DimVector&) = default;
  friend auto operator<=>(const DimVector&, const DimVector&) = default;

 private:
  std::vector<std::size_t> c_;
};

/// Ringel form: sum_i a_i b_i - sum_{arrows} a_{t(a)} b_{h(a)}.
inline long euler_form(const Quiver& q, const DimVector& a, const DimVector& b) {
  if (a.size() != q.vertex_count() || b.size() != q.vertex_count())
    fail(ErrorKind::DimensionMismatch, "dimension vector length differs from vertex count");
  long s = 0;
  for (std::size_t i = 0; i < q.vertex_count(); ++i) s += static_cast<long>(a[i] * b[i]);
  for (const auto& ar : q.arrows()) s -= static_cast<long>(a[ar.tail] * b[ar.head]);
  return s;
}

/// A representation by free modules: R^{dims[i]} at vertex i and, for arrow a,
/// a dims[h(a)] x dims[t(a)] matrix acting on column vectors.
class Rep {
 public:
  Rep() = default;
  Rep(Ring ring, Quiver quiver, DimVector dims, std::vector<Matrix> mats)
      : ring_(std::move(ring)), quiver_(std::move(quiver)), dims_(std::move(dims)), mats_(std::move(mats)) {
    if (dims_.size() != quiver_.vertex_count())
      fail(ErrorKind::DimensionMismatch, "dims length differs from vertex count");
    if (mats_.size() != quiver_.arrow_count())
      fail(ErrorKind::DimensionMismatch, "need one matrix per arrow");
    for (std::size_t a = 0; a < mats_.size(); ++a) {
      const auto& ar = quiver_.arrow(a);
      if (!(mats_[a].ring() == ring_))
        fail(ErrorKind::IncompatibleRing, "arrow matrix over " + mats_[a].ring().spec());
      if (mats_[a].rows() != dims_[ar.head] || mats_[a].cols() != dims_[ar.tail])
        fail(ErrorKind::DimensionMismatch, "arrow " + std::to_string(a + 1) + " matrix has wrong shape");
    }
  }

  static Rep zero(const Ring& ring, const Quiver& q) {
    std::vector<Matrix> mats;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) mats.emplace_back(ring, 0, 0);
    return Rep(ring, q, DimVector::zero(q.vertex_count()), std::move(mats));
  }

  /// One-dimensional at vertex i (0-based), zero elsewhere.
  static Rep simple(const Ring& ring, const Quiver& q, std::size_t i) {
    DimVector d = DimVector::unit(q.vertex_count(), i);
    std::vector<Matrix> mats;
    for (const auto& ar : q.arrows()) mats.emplace_back(ring, d[ar.head], d[ar.tail]);
    return Rep(ring, q, d, std::move(mats));
  }

  const Ring& ring() const { return ring_; }
  const Quiver& quiver() const { return quiver_; }
  const DimVector& dims() const { return dims_; }
  std::size_t dim(std::size_t v) const { return dims_[v]; }
  const std::vector<Matrix>& mats() const { return mats_; }
  const Matrix& mat(std::size_t a) const { return mats_.at(a); }

  friend bool operator==(const Rep& a, const Rep& b) {
    return a.ring_ == b.ring_ && a.quiver_ == b.quiver_ && a.dims_ == b.dims_ && a.mats_ == b.mats_;
  }

 private:
  Ring ring_ = Ring::integers();
  Quiver quiver_;
  DimVector dims_;
  std::vector<Matrix> mats_;
};

inline void require_same_base(const Rep& x, const Rep& y) {
  if (!(x.ring() == y.ring()) || !(x.quiver() == y.quiver()))
    fail(ErrorKind::IncompatibleBase, "representations over different rings or quivers");
}

/// Vertex-indexed maps commuting with every arrow: map[h(a)] X_a = Y_a map[t(a)].
class RepMorphism {
 public:
  RepMorphism(Rep source, Rep target, std::vector<Matrix> maps)
      : source_(std::move(source)), target_(std::move(target)), maps_(std::move(maps)) {
    require_same_base(source_, target_);
    const Quiver& q = source_.quiver();
    if (maps_.size() != q.vertex_count()) fail(ErrorKind::InvalidMorphism, "need one map per vertex");
    for (std::size_t v = 0; v < maps_.size(); ++v)
      if (maps_[v].rows() != target_.dim(v) || maps_[v].cols() != source_.dim(v) ||
          !(maps_[v].ring() == source_.ring()))
        fail(ErrorKind::InvalidMorphism, "vertex map " + std::to_string(v + 1) + " has wrong shape");
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      const auto& ar = q.arrow(a);
      if (!(maps_[ar.head] * source_.mat(a) == target_.mat(a) * maps_[ar.tail]))
        fail(ErrorKind::InvalidMorphism, "square at arrow " + std::to_string(a + 1) + " does not commute");
    }
  }

  static RepMorphism zero(const Rep& x, const Rep& y) {
    std::vector<Matrix> maps;
    for (std::size_t v = 0; v < x.quiver().vertex_count(); ++v) maps.emplace_back(x.ring(), y.dim(v), x.dim(v));
    return RepMorphism(x, y, std::move(maps));
  }

  static RepMorphism identity(const Rep& x) {
    std::vector<Matrix> maps;
    for (std::size_t v = 0; v < x.quiver().vertex_count(); ++v)
      maps.push_back(Matrix::identity(x.ring(), x.dim(v)));
    return RepMorphism(x, x, std::move(maps));
  }

  const Rep& source() const { return source_; }
  const Rep& target() const { return target_; }
  const std::vector<Matrix>& maps() const { return maps_; }
  const Matrix& map(std::size_t v) const { return maps_.at(v); }

  bool is_zero() const {
    return std::all_of(maps_.begin(), maps_.end(), [](const Matrix& m) { return m.is_zero(); });
  }

  /// This morphism followed by g.
  RepMorphism then(const RepMorphism& g) const {
    if (!(g.source_ == target_)) fail(ErrorKind::InvalidMorphism, "composition of non-composable morphisms");
    std::vector<Matrix> maps;
    for (std::size_t v = 0; v < maps_.size(); ++v) maps.push_back(g.maps_[v] * maps_[v]);
    return RepMorphism(source_, g.target_, std::move(maps));
  }

 private:
  Rep source_;
  Rep target_;
  std::vector<Matrix> maps_;
};

inline Rep direct_sum(const Rep& x, const Rep& y) {
  require_same_base(x, y);
  const Quiver& q = x.quiver();
  std::vector<Matrix> mats;
  for (std::size_t a = 0; a < q.arrow_count(); ++a)
    mats.push_back(Matrix::block_diagonal(x.ring(), {x.mat(a), y.mat(a)}));
  return Rep(x.ring(), q, x.dims() + y.dims(), std::move(mats));
}

inline Rep direct_sum(const std::vector<Rep>& parts, const Ring& ring, const Quiver& q) {
  Rep s = Rep::zero(ring, q);
  for (const auto& p : parts) s = direct_sum(s, p);
  return s;
}

/// The canonical injection of the first (which = 0) or second summand of x + y.
inline RepMorphism direct_sum_injection(const Rep& x, const Rep& y, int which) {
  Rep s = direct_sum(x, y);
  std::vector<Matrix> maps;
  for (std::size_t v = 0; v < x.quiver().vertex_count(); ++v) {
    std::size_t n = which == 0 ? x.dim(v) : y.dim(v);
    Matrix m(x.ring(), s.dim(v), n);
    m.set_block(which == 0 ? 0 : x.dim(v), 0, Matrix::identity(x.ring(), n));
    maps.push_back(std::move(m));
  }
  return RepMorphism(which == 0 ? x : y, s, std::move(maps));
}

inline RepMorphism direct_sum_projection(const Rep& x, const Rep& y, int which) {
  Rep s = direct_sum(x, y);
  std::vector<Matrix> maps;
  for (std::size_t v = 0; v < x.quiver().vertex_count(); ++v) {
    std::size_t n = which == 0 ? x.dim(v) : y.dim(v);
    Matrix m(x.ring(), n, s.dim(v));
    m.set_block(0, which == 0 ? 0 : x.dim(v), Matrix::identity(x.ring(), n));
    maps.push_back(std::move(m));
  }
  return RepMorphism(s, which == 0 ? x : y, std::move(maps));
}

/// X tensor R^k: the k-fold block-diagonal copy of X.
inline Rep tensor_free(const Rep& x, std::size_t k) {
  const Quiver& q = x.quiver();
  std::vector<Matrix> mats;
  for (std::size_t a = 0; a < q.arrow_count(); ++a)
    mats.push_back(Matrix::block_diagonal(x.ring(), std::vector<Matrix>(k, x.mat(a))));
  return Rep(x.ring(), q, x.dims() * k, std::move(mats));
}

inline Rep base_change(const Rep& x, const RingHom& h) {
  if (!(x.ring() == h.source()))
    fail(ErrorKind::IncompatibleRing, "rep over " + x.ring().spec() + ", hom from " + h.source().spec());
  std::vector<Matrix> mats;
  for (const auto& m : x.mats()) mats.push_back(apply_hom(h, m));
  return Rep(h.target(), x.quiver(), x.dims(), std::move(mats));
}

inline Rep base_change(const Rep& x, const Ring& target) {
  return base_change(x, RingHom::canonical(x.ring(), target));
}

inline RepMorphism base_change(const RepMorphism& f, const RingHom& h) {
  std::vector<Matrix> maps;
  for (const auto& m : f.maps()) maps.push_back(apply_hom(h, m));
  return RepMorphism(base_change(f.source(), h), base_change(f.target(), h), std::move(maps));
}

namespace detail {

inline void require_mutation_ring(const Ring& r, const char* what) {
  if (!(r.is_field() || r.kind() == Ring::Kind::Integers))
    fail(ErrorKind::NotComputable, std::string(what) + " needs a field or Z, got " + r.spec());
}

}  // namespace detail

/// Kernel K of f with its inclusion K -> source. Fields and Z only (kernels of
/// maps between free Z-modules are free).
inline std::pair<Rep, RepMorphism> kernel_rep(const RepMorphism& f) {
  const Rep& x = f.source();
  detail::require_mutation_ring(x.ring(), "kernel_rep");
  const Quiver& q = x.quiver();
  std::vector<Matrix> bases;
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    bases.push_back(kernel_basis(f.map(v)));
    dims.push_back(bases.back().cols());
  }
  std::vector<Matrix> mats;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& ar = q.arrow(a);
    auto m = solve(bases[ar.head], x.mat(a) * bases[ar.tail]);
    if (!m) fail(ErrorKind::TheoremViolation, "kernel not closed under arrow " + std::to_string(a + 1));
    mats.push_back(std::move(*m));
  }
  Rep k(x.ring(), q, DimVector(dims), std::move(mats));
  RepMorphism inc(k, x, std::move(bases));
  return {std::move(k), std::move(inc)};
}

/// Cokernel C of f with its projection target -> C. Over Z every vertex
/// cokernel must be free, otherwise NonFreeCokernel.
inline std::pair<Rep, RepMorphism> cokernel_rep(const RepMorphism& f) {
  const Rep& y = f.target();
  detail::require_mutation_ring(y.ring(), "cokernel_rep");
  const Ring& ring = y.ring();
  const Quiver& q = y.quiver();
  std::vector<Matrix> proj, sect;
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    const Matrix& m = f.map(v);
    SmithForm s = smith_form(m);
    std::size_t rank = 0;
    for (std::size_t t = 0; t < std::min(m.rows(), m.cols()); ++t) {
      if (ring.is_zero(s.diagonal(t, t))) break;
      if (!ring.is_unit(s.diagonal(t, t)))
        fail(ErrorKind::NonFreeCokernel, "torsion " + ring.format(s.diagonal(t, t)) + " at vertex " +
                                             std::to_string(v + 1));
      ++rank;
    }
    const std::size_t n = m.rows() - rank;
    proj.push_back(s.left.block(rank, n, 0, m.rows()));
    sect.push_back(s.left_inverse.block(0, m.rows(), rank, n));
    dims.push_back(n);
  }
  std::vector<Matrix> mats;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& ar = q.arrow(a);
    mats.push_back(proj[ar.head] * y.mat(a) * sect[ar.tail]);
  }
  Rep c(ring, q, DimVector(dims), std::move(mats));
  RepMorphism p(y, c, std::move(proj));
  return {std::move(c), std::move(p)};
}

}  // namespace quivlat
