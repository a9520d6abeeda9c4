#pragma once

#include <cstddef>
#include <vector>

#include "quivlat/error.hpp"
#include "quivlat/homology.hpp"
#include "quivlat/normal_form.hpp"
#include "quivlat/quiver.hpp"

namespace quivlat {

inline bool is_vertexwise_invertible(const RepMorphism& f) {
  for (const auto& m : f.maps())
    if (!is_invertible(m)) return false;
  return true;
}

/// Isomorphism test for rigid lattices. Conclusive when either side is
/// exceptional (a generator of Hom(X,Y) must itself be invertible) and over
/// small finite rings (exhaustive search over Hom). Over Z and Q, otherwise,
/// only +-1/0 combinations of up to 8 Hom generators are tried and failure
/// raises Inconclusive.
inline bool is_isomorphic_rigid(const Rep& x, const Rep& y) {
  require_same_base(x, y);
  if (x.dims() != y.dims()) return false;
  if (x.dims().is_zero()) return true;

  const Ring& ring = x.ring();
  HomExtResult xy = hom_ext(x, y);
  HomExtResult xx = hom_ext(x, x);
  // Hom(X,Y) ~ End(X) whenever Y ~ X.
  if (xy.hom.invariant_factors != xx.hom.invariant_factors) return false;
  if (xx.ext.invariant_factors != hom_ext(y, y).ext.invariant_factors) return false;

  const std::size_t k = xy.hom_generators.size();
  if (is_exceptional(x)) return k == 1 && is_vertexwise_invertible(xy.hom_generators[0]);

  HomComplex cx(x, y);
  const Matrix& gens = xy.hom.generator_images;
  auto try_coeffs = [&](const std::vector<Elem>& c) {
    Matrix v(ring, gens.rows(), 1);
    for (std::size_t j = 0; j < k; ++j)
      if (!ring.is_zero(c[j]))
        for (std::size_t i = 0; i < gens.rows(); ++i)
          if (!ring.is_zero(gens(i, j))) v(i, 0) = ring.add(v(i, 0), ring.mul(c[j], gens(i, j)));
    return is_vertexwise_invertible(cx.morphism(v));
  };
  // Odometer over coefficient vectors drawn from `values`.
  auto search = [&](const std::vector<Elem>& values) {
    std::vector<std::size_t> idx(k, 0);
    std::vector<Elem> c(k, values[0]);
    while (true) {
      if (try_coeffs(c)) return true;
      std::size_t j = 0;
      while (j < k && ++idx[j] == values.size()) {
        idx[j] = 0;
        c[j] = values[0];
        ++j;
      }
      if (j == k) return false;
      c[j] = values[idx[j]];
    }
  };

  if (ring.is_finite()) {
    std::vector<Elem> all = ring.elements();
    double count = 1;
    for (std::size_t j = 0; j < k; ++j) count *= static_cast<double>(all.size());
    if (count <= 1e6) return search(all);
  } else if (k <= 8) {
    if (search({ring.zero(), ring.one(), ring.neg(ring.one())})) return true;
  }
  fail(ErrorKind::Inconclusive, "bounded isomorphism search exhausted (" + std::to_string(k) + " Hom generators)");
}

}  // namespace quivlat
