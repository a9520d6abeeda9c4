#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "quivlat/homology.hpp"
#include "quivlat/isomorphism.hpp"
#include "quivlat/mutation.hpp"
#include "quivlat/structure.hpp"

namespace quivlat::verify {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline Quiver loop_quiver() { return Quiver(1, {Arrow{0, 0}}); }

/// Three vertices, arrows 1 -> 3 and 2 -> 3.
inline Quiver two_into_sink() { return Quiver(3, {Arrow{0, 2}, Arrow{1, 2}}); }

inline DimVector random_dims(Rng& rng, std::size_t n, long max) {
  std::vector<std::size_t> c(n);
  for (auto& x : c) x = static_cast<std::size_t>(uniform(rng, 0, max));
  return DimVector(std::move(c));
}

/// Entries drawn from [-range, range] and reduced into the ring.
inline Matrix random_matrix(Rng& rng, const Ring& ring, std::size_t rows, std::size_t cols, long range) {
  Matrix m(ring, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = ring.from_int(uniform(rng, -range, range));
  return m;
}

inline Rep random_rep(Rng& rng, const Ring& ring, const Quiver& q, const DimVector& d, long range) {
  std::vector<Matrix> mats;
  for (const auto& a : q.arrows()) mats.push_back(random_matrix(rng, ring, d[a.head], d[a.tail], range));
  return Rep(ring, q, d, std::move(mats));
}

/// A random product of elementary integer matrices with every entry of the
/// product kept within [-bound, bound]; returns (g, g^-1).
inline std::pair<Matrix, Matrix> random_unimodular(Rng& rng, const Ring& ring, std::size_t n, long bound,
                                                   int steps = 12) {
  Matrix g = Matrix::identity(ring, n), inv = g;
  auto small = [&](const Matrix& m) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Integer& x = m(i, j).integer();
        if (x > bound || x < -bound) return false;
      }
    return true;
  };
  for (int s = 0; s < steps && n > 0; ++s) {
    std::size_t i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
    std::size_t j = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
    long kind = uniform(rng, 0, 2);
    Matrix g2 = g, inv2 = inv;
    if (kind == 0 && i != j) {
      Elem c = ring.from_int(uniform(rng, -3, 3));
      g2.add_row_multiple(i, j, c);
      inv2.add_col_multiple(j, i, ring.neg(c));
    } else if (kind == 1) {
      g2.swap_rows(i, j);
      inv2.swap_cols(i, j);
    } else {
      g2.scale_row(i, ring.neg(ring.one()));
      inv2.scale_col(i, ring.neg(ring.one()));
    }
    if (small(g2)) {
      g = std::move(g2);
      inv = std::move(inv2);
    }
  }
  return {g, inv};
}

/// X with every vertex basis changed: arrow a becomes g_h X_a g_t^-1.
inline Rep conjugate(const Rep& x, const std::vector<std::pair<Matrix, Matrix>>& changes) {
  std::vector<Matrix> mats;
  for (std::size_t a = 0; a < x.quiver().arrow_count(); ++a) {
    const auto& ar = x.quiver().arrow(a);
    mats.push_back(changes[ar.head].first * x.mat(a) * changes[ar.tail].second);
  }
  return Rep(x.ring(), x.quiver(), x.dims(), std::move(mats));
}

inline Rep random_conjugate(Rng& rng, const Rep& x, long bound) {
  std::vector<std::pair<Matrix, Matrix>> changes;
  for (std::size_t v = 0; v < x.quiver().vertex_count(); ++v)
    changes.push_back(random_unimodular(rng, x.ring(), x.dim(v), bound));
  return conjugate(x, changes);
}

/// Real Schur roots with total dimension in [1, max_total], by brute force
/// over dimension vectors.
inline std::vector<DimVector> schur_roots(ExceptionalCatalog& catalog, std::size_t max_total) {
  const std::size_t n = catalog.quiver().vertex_count();
  std::vector<DimVector> out;
  std::vector<std::size_t> c(n, 0);
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t v, std::size_t used) {
    if (v == n) {
      DimVector d(c);
      if (!d.is_zero() && catalog.verdict(d) == SchurVerdict::Yes) out.push_back(d);
      return;
    }
    for (c[v] = 0; used + c[v] <= max_total; ++c[v]) walk(v + 1, used + c[v]);
    c[v] = 0;
  };
  walk(0, 0);
  return out;
}

struct PlantedLattice {
  Rep rep;
  std::vector<std::pair<DimVector, std::size_t>> multiset;  // sorted by dims
};

/// Direct sum of pairwise Ext-orthogonal exceptional Z-lattices with random
/// multiplicities, each vertex then conjugated by a random unimodular matrix.
inline PlantedLattice planted_rigid(Rng& rng, ExceptionalCatalog& catalog, const std::vector<DimVector>& roots,
                                    std::size_t max_total, long conj_bound = 10) {
  const Quiver& q = catalog.quiver();
  const Ring z = Ring::integers();
  std::vector<DimVector> order = roots;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Rep> chosen;
  std::vector<std::pair<DimVector, std::size_t>> multiset;
  std::size_t total = 0;
  const long wanted = uniform(rng, 1, 3);
  for (const auto& d : order) {
    if (static_cast<long>(chosen.size()) == wanted) break;
    if (total + d.total() > max_total) continue;
    Rep e = catalog.integral(d);
    bool orthogonal = true;
    for (const auto& c : chosen)
      orthogonal = orthogonal && hom_ext(c, e).ext.is_zero() && hom_ext(e, c).ext.is_zero();
    if (!orthogonal) continue;
    std::size_t m = static_cast<std::size_t>(uniform(rng, 1, 2));
    while (m > 1 && total + m * d.total() > max_total) --m;
    chosen.push_back(e);
    multiset.emplace_back(d, m);
    total += m * d.total();
  }
  std::vector<std::size_t> idx(chosen.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  Rep x = Rep::zero(z, q);
  for (std::size_t i : idx) x = direct_sum(x, tensor_free(chosen[i], multiset[i].second));
  std::sort(multiset.begin(), multiset.end());
  return {random_conjugate(rng, x, conj_bound), multiset};
}

struct SuiteReport {
  explicit SuiteReport(std::string name) : suite(std::move(name)) {}

  std::string suite;
  std::size_t cases = 0;
  std::size_t passed = 0;
  std::string first_counterexample;

  std::size_t failed() const { return cases - passed; }
  bool ok() const { return cases > 0 && passed == cases; }

  void record(bool pass, const std::string& what) {
    ++cases;
    if (pass) ++passed;
    else if (first_counterexample.empty()) first_counterexample = what;
  }
};

inline std::string describe(const Rep& x) {
  std::string s = x.ring().spec() + " dims " + x.dims().to_string();
  for (std::size_t a = 0; a < x.mats().size(); ++a) s += " a" + std::to_string(a + 1) + "=" + x.mat(a).to_string();
  return s;
}

/// Runs `body` and turns library errors into a failed case.
inline void guarded(SuiteReport& r, const std::string& label, const std::function<bool()>& body) {
  try {
    r.record(body(), label);
  } catch (const Error& e) {
    r.record(false, label + ": " + std::string(e.name()) + ": " + e.detail());
  }
}

inline std::vector<std::pair<std::string, Quiver>> small_quivers() {
  return {{"A2", Quiver::linear(2)}, {"A3", Quiver::linear(3)}, {"Kronecker", Quiver::generalized_kronecker(2)}};
}

/// dim Hom - dim Ext = <dims X, dims Y> over F_2, F_3, F_5.
inline SuiteReport euler_suite(std::uint64_t seed, std::size_t size) {
  Rng rng(seed);
  SuiteReport r{"euler"};
  const auto quivers = small_quivers();
  const long primes[] = {2, 3, 5};
  for (std::size_t i = 0; i < size; ++i) {
    const auto& [name, q] = quivers[i % quivers.size()];
    Ring f = Ring::prime_field(primes[(i / quivers.size()) % 3]);
    Rep x = random_rep(rng, f, q, random_dims(rng, q.vertex_count(), 4), 4);
    Rep y = random_rep(rng, f, q, random_dims(rng, q.vertex_count(), 4), 4);
    guarded(r, name + " X: " + describe(x) + " Y: " + describe(y), [&] {
      HomExtResult h = hom_ext(x, y);
      return static_cast<long>(h.hom.free_rank()) - static_cast<long>(h.ext.free_rank()) ==
             euler_form(q, x.dims(), y.dims());
    });
  }
  return r;
}

/// Ext commutes with base change from Z to F_2, F_3, Z/4, Z/6 and Q.
inline SuiteReport basechange_suite(std::uint64_t seed, std::size_t size) {
  Rng rng(seed);
  SuiteReport r{"basechange"};
  auto quivers = small_quivers();
  quivers.emplace_back("loop", loop_quiver());
  const Ring z = Ring::integers();
  const std::vector<Ring> targets = {Ring::prime_field(2), Ring::prime_field(3), Ring::integers_mod(4),
                                     Ring::integers_mod(6), Ring::rationals()};
  for (std::size_t i = 0; i < size; ++i) {
    const auto& [name, q] = quivers[i % quivers.size()];
    Rep x = random_rep(rng, z, q, random_dims(rng, q.vertex_count(), 3), 3);
    Rep y = random_rep(rng, z, q, random_dims(rng, q.vertex_count(), 3), 3);
    guarded(r, name + " X: " + describe(x) + " Y: " + describe(y), [&] {
      for (const auto& t : targets)
        if (!check_base_change(x, y, RingHom::canonical(z, t))) return false;
      return true;
    });
  }
  return r;
}

/// Braid relations and inverse laws itemwise up to isomorphism, at sequences
/// reached by random braid words on A3 and on two arrows into a sink, over
/// F_2 and Z.
inline SuiteReport braid_suite(std::uint64_t seed, std::size_t size) {
  Rng rng(seed);
  SuiteReport r{"braid"};
  const std::vector<std::pair<std::string, Quiver>> quivers = {{"A3", Quiver::linear(3)}, {"sink", two_into_sink()}};
  const std::vector<Ring> rings = {Ring::prime_field(2), Ring::integers()};
  auto same = [](const ExcSequence& a, const ExcSequence& b) {
    for (std::size_t k = 0; k < a.size(); ++k)
      if (!is_isomorphic_rigid(a[k], b[k])) return false;
    return true;
  };
  for (std::size_t i = 0; i < size; ++i) {
    const auto& [name, q] = quivers[i % quivers.size()];
    const Ring& ring = rings[(i / quivers.size()) % rings.size()];
    std::vector<BraidStep> word;
    const long len = uniform(rng, 0, 4);
    for (long k = 0; k < len; ++k) word.push_back({static_cast<std::size_t>(uniform(rng, 1, 2)), uniform(rng, 0, 1) == 1});
    std::string label = name + " over " + ring.spec() + " word";
    for (const auto& s : word) label += " " + s.name();
    guarded(r, label, [&] {
      ExcSequence s = braid_act(standard_sequence(q, ring), word);
      ExcSequence lhs = braid_act(s, {{1, false}, {2, false}, {1, false}});
      ExcSequence rhs = braid_act(s, {{2, false}, {1, false}, {2, false}});
      if (!same(lhs, rhs)) return false;
      for (std::size_t g = 1; g < s.size(); ++g)
        for (bool inv : {false, true})
          if (!same(braid_act(braid_act(s, g, inv), g, !inv), s)) return false;
      return true;
    });
  }
  return r;
}

/// Hom and Ext between exceptional Z-lattices are free, with the ranks of
/// the corresponding exceptional reps over Q.
inline SuiteReport theorem_a_suite(std::uint64_t seed, std::size_t size) {
  Rng rng(seed);
  SuiteReport r{"theoremA"};
  for (const auto& [name, q] : small_quivers()) {
    ExceptionalCatalog catalog(q, 12);
    auto roots = schur_roots(catalog, 8);
    for (std::size_t i = 0; i < (size + 2) / 3; ++i) {
      const DimVector& a = roots[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(roots.size()) - 1))];
      const DimVector& b = roots[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(roots.size()) - 1))];
      guarded(r, name + " " + a.to_string() + " " + b.to_string(), [&] {
        auto [hom, ext] = rigid_hom_ext_ranks(catalog.integral(a), catalog.integral(b));
        GenericDims g = generic_dims(catalog, a, b);
        return hom == g.hom_rank && ext == g.ext_rank;
      });
    }
  }
  return r;
}

/// Exceptional lattices exist over Z, F_3, Z/4, Z/6 and F_2[e]/(e^2), and the
/// lattices reached from the simples and from the projectives are isomorphic.
inline SuiteReport theorem_b_suite(std::uint64_t seed, std::size_t size) {
  Rng rng(seed);
  SuiteReport r{"theoremB"};
  const std::vector<Ring> rings = {Ring::integers(), Ring::prime_field(3), Ring::integers_mod(4),
                                   Ring::integers_mod(6), Ring::truncated_poly(2, 2)};
  for (const auto& [name, q] : small_quivers()) {
    ExceptionalCatalog catalog(q, 16);
    auto roots = schur_roots(catalog, 8);
    for (std::size_t i = 0; i < (size + 2) / 3; ++i) {
      const DimVector& a = roots[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(roots.size()) - 1))];
      const Ring& ring = rings[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(rings.size()) - 1))];
      guarded(r, name + " " + a.to_string() + " over " + ring.spec(), [&] {
        Rep x = exceptional_lattice(catalog, a, ring);
        if (x.dims() != a || !is_exceptional(x)) return false;
        auto other = catalog.via_projectives(a);
        if (!other) return false;
        return is_isomorphic_rigid(x, base_change(other->rep, ring));
      });
    }
  }
  return r;
}

/// Planted rigid Z-lattices decompose into the planted summands for the
/// auxiliary primes 2, 3 and 5, with a verified reassembly isomorphism.
inline SuiteReport theorem_c_suite(std::uint64_t seed, std::size_t size) {
  Rng rng(seed);
  SuiteReport r{"theoremC"};
  for (const auto& [name, q] : small_quivers()) {
    ExceptionalCatalog catalog(q, 12);
    auto roots = schur_roots(catalog, 5);
    for (std::size_t i = 0; i < (size + 2) / 3; ++i) {
      PlantedLattice p = planted_rigid(rng, catalog, roots, 10);
      guarded(r, name + " " + describe(p.rep), [&] {
        for (long prime : {2L, 3L, 5L}) {
          RigidDecomposition d = decompose_rigid(p.rep, catalog, prime);
          if (d.multiset() != p.multiset || !d.verified) return false;
          RepMorphism iso(d.reassemble(p.rep.ring(), q), p.rep, d.isomorphism->maps());
          if (!is_vertexwise_invertible(iso)) return false;
        }
        return true;
      });
    }
  }
  return r;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"euler", "basechange", "braid", "theoremA", "theoremB", "theoremC"};
  return names;
}

inline SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::size_t size) {
  if (name == "euler") return euler_suite(seed, size);
  if (name == "basechange") return basechange_suite(seed, size);
  if (name == "braid") return braid_suite(seed, size);
  if (name == "theoremA") return theorem_a_suite(seed, size);
  if (name == "theoremB") return theorem_b_suite(seed, size);
  if (name == "theoremC") return theorem_c_suite(seed, size);
  fail(ErrorKind::InvalidArgument, "unknown suite '" + name + "'");
}

}  // namespace quivlat::verify
