#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "quivlat/error.hpp"
#include "quivlat/homology.hpp"
#include "quivlat/quiver.hpp"

namespace quivlat {

/// Hom and Ext both vanish from y to x, i.e. (x, y) may be read left to right.
inline bool is_orthogonal_from(const Rep& y, const Rep& x) {
  HomExtResult r = hom_ext(y, x);
  return r.hom.is_zero() && r.ext.is_zero();
}

inline bool is_exceptional_pair(const Rep& x, const Rep& y) {
  require_same_base(x, y);
  return is_exceptional(x) && is_exceptional(y) && is_orthogonal_from(y, x);
}

/// Exceptional reps over a common ring and quiver with Hom = Ext = 0 from
/// every later item to every earlier one. Validated on construction.
class ExcSequence {
 public:
  explicit ExcSequence(std::vector<Rep> items) : items_(std::move(items)) {
    validate_all();
  }

  std::size_t size() const { return items_.size(); }
  const Rep& operator[](std::size_t i) const { return items_[i]; }
  const std::vector<Rep>& items() const { return items_; }

  std::vector<DimVector> dims() const {
    std::vector<DimVector> d;
    for (const auto& x : items_) d.push_back(x.dims());
    return d;
  }

  /// Replaces positions i-1 and i (1-based i) of a valid sequence by an
  /// exceptional pair and rechecks every relation involving those positions.
  ExcSequence with_pair(std::size_t i, Rep first, Rep second) const {
    ExcSequence out = *this;
    out.items_[i - 1] = std::move(first);
    out.items_[i] = std::move(second);
    for (std::size_t p : {i - 1, i})
      for (std::size_t j = 0; j < out.size(); ++j) {
        if (j == i - 1 || j == i) continue;
        const std::size_t lo = std::min(p, j), hi = std::max(p, j);
        if (!is_orthogonal_from(out.items_[hi], out.items_[lo]))
          fail(ErrorKind::TheoremViolation, "braid move broke orthogonality at items " + std::to_string(lo + 1) +
                                                " and " + std::to_string(hi + 1));
      }
    return out;
  }

 private:
  void validate_all() const {
    for (std::size_t i = 0; i < items_.size(); ++i) {
      if (i > 0) require_same_base(items_[0], items_[i]);
      if (!is_exceptional(items_[i]))
        fail(ErrorKind::PreconditionViolated, "item " + std::to_string(i + 1) + " is not exceptional");
    }
    for (std::size_t i = 0; i < items_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (!is_orthogonal_from(items_[i], items_[j]))
          fail(ErrorKind::PreconditionViolated,
               "Hom or Ext from item " + std::to_string(i + 1) + " to item " + std::to_string(j + 1));
  }

  std::vector<Rep> items_;
};

enum class MutationCase { UniversalExtension, KernelOfUniversalMap, CokernelOfUniversalMap, Unchanged };

inline const char* mutation_case_name(MutationCase c) {
  switch (c) {
    case MutationCase::UniversalExtension: return "UniversalExtension";
    case MutationCase::KernelOfUniversalMap: return "KernelOfUniversalMap";
    case MutationCase::CokernelOfUniversalMap: return "CokernelOfUniversalMap";
    case MutationCase::Unchanged: return "Unchanged";
  }
  return "?";
}

/// witness holds the two maps of the short exact sequence with `result` at
/// one end (empty when Unchanged).
struct MutationResult {
  Rep result;
  MutationCase mutation_case;
  std::vector<RepMorphism> witness;
};

namespace detail {

inline HomExtResult mutation_data(const Rep& x, const Rep& y, bool check_pair) {
  if (check_pair && !is_exceptional_pair(x, y)) fail(ErrorKind::PreconditionViolated, "not an exceptional pair");
  require_mutation_ring(x.ring(), "mutation");
  HomExtResult r = hom_ext(x, y);
  if (!r.hom.is_free() || !r.ext.is_free())
    fail(ErrorKind::TheoremViolation, "Hom or Ext of an exceptional pair has torsion");
  if (!r.hom.is_zero() && !r.ext.is_zero())
    fail(ErrorKind::TheoremViolation, "Hom and Ext of an exceptional pair are both nonzero");
  return r;
}

enum class Shape { Mono, Epi, Neither };

inline Shape shape_of(const RepMorphism& f) {
  bool mono = true, epi = true;
  for (const auto& m : f.maps()) {
    mono = mono && is_injective(m);
    epi = epi && is_surjective(m);
  }
  if (epi) return Shape::Epi;
  if (mono) return Shape::Mono;
  return Shape::Neither;
}

/// Kernel of an epi, cokernel of a mono.
inline MutationResult kernel_or_cokernel(const RepMorphism& f) {
  Shape s = shape_of(f);
  if (s == Shape::Neither) fail(ErrorKind::NeitherMonoNorEpi, "universal map is neither mono nor epi");
  if (s == Shape::Epi) {
    auto [k, inc] = kernel_rep(f);
    return {k, MutationCase::KernelOfUniversalMap, {inc, f}};
  }
  auto [c, proj] = cokernel_rep(f);
  return {c, MutationCase::CokernelOfUniversalMap, {f, proj}};
}

inline MutationResult left_mutate(const Rep& x, const Rep& y, bool check_pair) {
  HomExtResult r = mutation_data(x, y, check_pair);
  const Ring& ring = x.ring();
  const Quiver& q = x.quiver();
  MutationResult out{y, MutationCase::Unchanged, {}};

  if (!r.ext.is_zero()) {
    // 0 -> Y -> E -> X (x) Ext(X,Y) -> 0 with the cocycles c_1..c_d in the corner.
    const std::size_t d = r.ext_cocycles.size();
    Rep xd = tensor_free(x, d);
    std::vector<Matrix> mats;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      const auto& ar = q.arrow(a);
      std::vector<Matrix> corner;
      for (const auto& c : r.ext_cocycles) corner.push_back(c[a]);
      Matrix m(ring, y.dim(ar.head) + xd.dim(ar.head), y.dim(ar.tail) + xd.dim(ar.tail));
      m.set_block(0, 0, y.mat(a));
      m.set_block(0, y.dim(ar.tail), Matrix::hstack(ring, y.dim(ar.head), corner));
      m.set_block(y.dim(ar.head), y.dim(ar.tail), xd.mat(a));
      mats.push_back(std::move(m));
    }
    Rep e(ring, q, y.dims() + xd.dims(), std::move(mats));
    std::vector<Matrix> inc, proj;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
      inc.push_back(Matrix::vstack(ring, y.dim(v), {Matrix::identity(ring, y.dim(v)), Matrix(ring, xd.dim(v), y.dim(v))}));
      proj.push_back(Matrix::hstack(ring, xd.dim(v), {Matrix(ring, xd.dim(v), y.dim(v)), Matrix::identity(ring, xd.dim(v))}));
    }
    out = {e, MutationCase::UniversalExtension,
           {RepMorphism(y, e, std::move(inc)), RepMorphism(e, xd, std::move(proj))}};
  } else if (!r.hom.is_zero()) {
    // Universal map X (x) Hom(X,Y) -> Y, (f_1 | ... | f_h) at each vertex.
    Rep xh = tensor_free(x, r.hom_generators.size());
    std::vector<Matrix> maps;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
      std::vector<Matrix> parts;
      for (const auto& f : r.hom_generators) parts.push_back(f.map(v));
      maps.push_back(Matrix::hstack(ring, y.dim(v), parts));
    }
    out = kernel_or_cokernel(RepMorphism(xh, y, std::move(maps)));
  }
  if (!is_exceptional(out.result) || !is_orthogonal_from(x, out.result))
    fail(ErrorKind::TheoremViolation, "left mutation did not produce an exceptional pair");
  return out;
}

inline MutationResult right_mutate(const Rep& x, const Rep& y, bool check_pair) {
  HomExtResult r = mutation_data(x, y, check_pair);
  const Ring& ring = x.ring();
  const Quiver& q = x.quiver();
  MutationResult out{x, MutationCase::Unchanged, {}};

  if (!r.ext.is_zero()) {
    // 0 -> Y (x) D Ext(X,Y) -> E -> X -> 0 with the cocycles stacked in the corner.
    const std::size_t d = r.ext_cocycles.size();
    Rep yd = tensor_free(y, d);
    std::vector<Matrix> mats;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      const auto& ar = q.arrow(a);
      std::vector<Matrix> corner;
      for (const auto& c : r.ext_cocycles) corner.push_back(c[a]);
      Matrix m(ring, yd.dim(ar.head) + x.dim(ar.head), yd.dim(ar.tail) + x.dim(ar.tail));
      m.set_block(0, 0, yd.mat(a));
      m.set_block(0, yd.dim(ar.tail), Matrix::vstack(ring, x.dim(ar.tail), corner));
      m.set_block(yd.dim(ar.head), yd.dim(ar.tail), x.mat(a));
      mats.push_back(std::move(m));
    }
    Rep e(ring, q, yd.dims() + x.dims(), std::move(mats));
    std::vector<Matrix> inc, proj;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
      inc.push_back(Matrix::vstack(ring, yd.dim(v), {Matrix::identity(ring, yd.dim(v)), Matrix(ring, x.dim(v), yd.dim(v))}));
      proj.push_back(Matrix::hstack(ring, x.dim(v), {Matrix(ring, x.dim(v), yd.dim(v)), Matrix::identity(ring, x.dim(v))}));
    }
    out = {e, MutationCase::UniversalExtension,
           {RepMorphism(yd, e, std::move(inc)), RepMorphism(e, x, std::move(proj))}};
  } else if (!r.hom.is_zero()) {
    // Universal map X -> Y (x) D Hom(X,Y), (f_1; ...; f_h) at each vertex.
    Rep yh = tensor_free(y, r.hom_generators.size());
    std::vector<Matrix> maps;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
      std::vector<Matrix> parts;
      for (const auto& f : r.hom_generators) parts.push_back(f.map(v));
      maps.push_back(Matrix::vstack(ring, x.dim(v), parts));
    }
    out = kernel_or_cokernel(RepMorphism(x, yh, std::move(maps)));
  }
  if (!is_exceptional(out.result) || !is_orthogonal_from(out.result, y))
    fail(ErrorKind::TheoremViolation, "right mutation did not produce an exceptional pair");
  return out;
}

}  // namespace detail

/// L_X Y for an exceptional pair (X, Y); (L_X Y, X) is again exceptional.
inline MutationResult left_mutate(const Rep& x, const Rep& y) { return detail::left_mutate(x, y, true); }

/// R_Y X for an exceptional pair (X, Y); (Y, R_Y X) is again exceptional.
inline MutationResult right_mutate(const Rep& x, const Rep& y) { return detail::right_mutate(x, y, true); }

/// A braid generator: sigma_index (1-based) or its inverse.
struct BraidStep {
  std::size_t index;
  bool inverse;

  std::string name() const { return "s" + std::to_string(index) + (inverse ? "-1" : ""); }
  friend bool operator==(const BraidStep&, const BraidStep&) = default;
};

/// sigma_i: (X_i, X_i+1) -> (L_{X_i} X_i+1, X_i); the inverse gives
/// (X_i+1, R_{X_i+1} X_i).
inline ExcSequence braid_act(const ExcSequence& seq, std::size_t i, bool inverse) {
  if (i < 1 || i >= seq.size())
    fail(ErrorKind::InvalidArgument, "braid generator index " + std::to_string(i) + " out of range");
  const Rep& a = seq[i - 1];
  const Rep& b = seq[i];
  if (!inverse) return seq.with_pair(i, detail::left_mutate(a, b, false).result, a);
  return seq.with_pair(i, b, detail::right_mutate(a, b, false).result);
}

inline ExcSequence braid_act(const ExcSequence& seq, const BraidStep& s) { return braid_act(seq, s.index, s.inverse); }

inline ExcSequence braid_act(ExcSequence seq, const std::vector<BraidStep>& word) {
  for (const auto& s : word) seq = braid_act(seq, s);
  return seq;
}

/// Simples in the lexicographically smallest order with tails before heads.
inline ExcSequence standard_sequence(const Quiver& q, const Ring& ring) {
  auto order = q.topological_order();
  if (!order) fail(ErrorKind::CyclicQuiver, "quiver has an oriented cycle");
  std::vector<Rep> items;
  for (std::size_t v : *order) items.push_back(Rep::simple(ring, q, v));
  return ExcSequence(std::move(items));
}

/// The indecomposable projective at v: P_v(w) has the paths v -> w as basis
/// and an arrow acts by composing paths with it. Needs an acyclic quiver.
inline Rep projective_rep(const Quiver& q, const Ring& ring, std::size_t v) {
  if (!q.is_acyclic()) fail(ErrorKind::CyclicQuiver, "quiver has an oriented cycle");
  if (v >= q.vertex_count()) fail(ErrorKind::InvalidArgument, "vertex out of range");
  using Path = std::vector<std::size_t>;
  std::vector<std::vector<Path>> paths(q.vertex_count());
  std::function<void(std::size_t, Path&)> walk = [&](std::size_t w, Path& p) {
    paths[w].push_back(p);
    for (std::size_t a = 0; a < q.arrow_count(); ++a)
      if (q.arrow(a).tail == w) {
        p.push_back(a);
        walk(q.arrow(a).head, p);
        p.pop_back();
      }
  };
  Path empty;
  walk(v, empty);
  for (auto& list : paths) std::sort(list.begin(), list.end());
  std::vector<std::size_t> dims;
  for (const auto& list : paths) dims.push_back(list.size());
  std::vector<Matrix> mats;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow& ar = q.arrow(a);
    Matrix m(ring, dims[ar.head], dims[ar.tail]);
    for (std::size_t j = 0; j < paths[ar.tail].size(); ++j) {
      Path longer = paths[ar.tail][j];
      longer.push_back(a);
      auto it = std::lower_bound(paths[ar.head].begin(), paths[ar.head].end(), longer);
      m(static_cast<std::size_t>(it - paths[ar.head].begin()), j) = ring.one();
    }
    mats.push_back(std::move(m));
  }
  return Rep(ring, q, DimVector(std::move(dims)), std::move(mats));
}

/// Indecomposable projectives, heads before tails.
inline ExcSequence projective_sequence(const Quiver& q, const Ring& ring) {
  auto order = q.topological_order();
  if (!order) fail(ErrorKind::CyclicQuiver, "quiver has an oriented cycle");
  std::vector<Rep> items;
  for (auto it = order->rbegin(); it != order->rend(); ++it) items.push_back(projective_rep(q, ring, *it));
  return ExcSequence(std::move(items));
}

struct OrbitHit {
  Rep rep;
  std::vector<BraidStep> path;
};

/// Breadth-first exploration of the braid orbit of the standard sequence,
/// generators tried in the order s1, s1-1, s2, s2-1, .... Sequences with an
/// item of total dimension above `bound` are not entered; sequences already
/// seen (same ordered tuple of dimension vectors) are skipped. Exploration is
/// incremental, so repeated queries share work.
class BraidOrbit {
 public:
  BraidOrbit(const Quiver& q, const Ring& ring, std::size_t bound, std::size_t hits_per_dims = 2)
      : BraidOrbit(standard_sequence(q, ring), {}, bound, hits_per_dims) {}

  /// Orbit of `start`, itself reached from the standard sequence by `prefix`;
  /// reported paths begin with the prefix.
  BraidOrbit(ExcSequence start, std::vector<BraidStep> prefix, std::size_t bound, std::size_t hits_per_dims = 2)
      : quiver_(start.items().empty() ? Quiver(0, {}) : start[0].quiver()),
        ring_(start.items().empty() ? Ring::integers() : start[0].ring()),
        bound_(bound),
        hits_per_dims_(hits_per_dims) {
    seen_.insert(start.dims());
    queue_.push_back({std::move(start), std::move(prefix)});
  }

  const Quiver& quiver() const { return quiver_; }
  const Ring& ring() const { return ring_; }
  std::size_t bound() const { return bound_; }

  /// First exceptional rep of the given dims met in breadth-first order.
  std::optional<OrbitHit> find(const DimVector& target) {
    auto hits = find_all(target, 1);
    if (hits.empty()) return std::nullopt;
    return hits.front();
  }

  /// Up to max_hits (<= hits_per_dims) pairwise different presentations of
  /// dims `target`, in the order they are met.
  std::vector<OrbitHit> find_all(const DimVector& target, std::size_t max_hits) {
    if (target.size() != quiver_.vertex_count())
      fail(ErrorKind::DimensionMismatch, "target length differs from vertex count");
    while (hits_count(target) < max_hits && expand_one()) {
    }
    auto it = hits_.find(target);
    if (it == hits_.end()) return {};
    std::vector<OrbitHit> out(it->second.begin(), it->second.begin() + std::min(max_hits, it->second.size()));
    return out;
  }

  /// Explores the whole bounded orbit; returns every visited sequence.
  const std::vector<std::pair<ExcSequence, std::vector<BraidStep>>>& explore_all() {
    while (expand_one()) {
    }
    return visited_;
  }

 private:
  struct Node {
    ExcSequence seq;
    std::vector<BraidStep> path;
  };

  std::size_t hits_count(const DimVector& d) const {
    auto it = hits_.find(d);
    return it == hits_.end() ? 0 : it->second.size();
  }

  bool expand_one() {
    if (queue_.empty()) return false;
    Node node = std::move(queue_.front());
    queue_.pop_front();
    for (const auto& item : node.seq.items()) {
      auto& list = hits_[item.dims()];
      bool fresh = std::none_of(list.begin(), list.end(), [&](const OrbitHit& h) { return h.rep == item; });
      if (list.size() < hits_per_dims_ && fresh) list.push_back({item, node.path});
    }
    for (std::size_t i = 1; i < node.seq.size(); ++i)
      for (bool inv : {false, true}) {
        BraidStep step{i, inv};
        if (!node.path.empty() && node.path.back() == BraidStep{i, !inv}) continue;
        ExcSequence next = braid_act(node.seq, step);
        bool small = true;
        for (const auto& item : next.items()) small = small && item.dims().total() <= bound_;
        if (!small || !seen_.insert(next.dims()).second) continue;
        std::vector<BraidStep> path = node.path;
        path.push_back(step);
        queue_.push_back({std::move(next), std::move(path)});
      }
    visited_.emplace_back(std::move(node.seq), std::move(node.path));
    return true;
  }

  Quiver quiver_;
  Ring ring_;
  std::size_t bound_;
  std::size_t hits_per_dims_;
  std::deque<Node> queue_;
  std::set<std::vector<DimVector>> seen_;
  std::map<DimVector, std::vector<OrbitHit>> hits_;
  std::vector<std::pair<ExcSequence, std::vector<BraidStep>>> visited_;
};

/// An exceptional rep of dims `target` from the bounded braid orbit, if any.
inline std::optional<Rep> orbit_search(const Quiver& q, const DimVector& target, std::size_t bound, const Ring& ring) {
  BraidOrbit orbit(q, ring, bound, 1);
  auto hit = orbit.find(target);
  if (!hit) return std::nullopt;
  return hit->rep;
}

}  // namespace quivlat
