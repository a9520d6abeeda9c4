#include "quivlat/verify.hpp"
#include "test_support.hpp"

using namespace quivlat;
using namespace testing_support;

namespace {

void expect_itemwise_isomorphic(const ExcSequence& a, const ExcSequence& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    EXPECT_TRUE(is_isomorphic_rigid(a[i], b[i])) << "item " << i + 1 << " " << a[i].dims().to_string();
}

std::vector<BraidStep> word(std::initializer_list<int> w) {
  std::vector<BraidStep> out;
  for (int s : w) out.push_back({static_cast<std::size_t>(s < 0 ? -s : s), s < 0});
  return out;
}

/// The witness of a non-trivial mutation is a short exact sequence.
void expect_exact_witness(const MutationResult& m) {
  if (m.mutation_case == MutationCase::Unchanged) {
    EXPECT_TRUE(m.witness.empty());
    return;
  }
  ASSERT_EQ(m.witness.size(), 2u);
  const RepMorphism &f = m.witness[0], &g = m.witness[1];
  EXPECT_TRUE(f.then(g).is_zero());
  EXPECT_EQ(f.source().dims() + g.target().dims(), f.target().dims());
  for (std::size_t v = 0; v < f.source().quiver().vertex_count(); ++v) {
    EXPECT_EQ(kernel_basis(f.map(v)).cols(), 0u);  // f injective
    EXPECT_TRUE(is_surjective(g.map(v)));
  }
}

}  // namespace

TEST(ExceptionalPair, SpecExamples) {
  Ring z = Ring::integers();
  EXPECT_TRUE(is_exceptional_pair(s1(z), s2(z)));
  EXPECT_FALSE(is_exceptional_pair(s2(z), s1(z)));
  EXPECT_EQ(hom_ext(s1(z), s2(z)).ext.free_rank(), 1u);
  EXPECT_FALSE(is_exceptional_pair(p1(z), p1(z)));
  EXPECT_TRUE(is_exceptional_pair(kron_s2(z), kron_p1(z)));
}

TEST(LeftMutate, SpecExamples) {
  Ring z = Ring::integers();
  MutationResult a = left_mutate(s1(z), s2(z));
  EXPECT_EQ(a.mutation_case, MutationCase::UniversalExtension);
  EXPECT_EQ(a.result.dims(), DimVector({1, 1}));
  EXPECT_TRUE(is_isomorphic_rigid(a.result, p1(z)));
  expect_exact_witness(a);

  MutationResult b = left_mutate(p1(z), s1(z));
  EXPECT_EQ(b.mutation_case, MutationCase::KernelOfUniversalMap);
  EXPECT_TRUE(is_isomorphic_rigid(b.result, s2(z)));
  expect_exact_witness(b);

  MutationResult c = left_mutate(s2(z), p1(z));
  EXPECT_EQ(c.mutation_case, MutationCase::CokernelOfUniversalMap);
  EXPECT_TRUE(is_isomorphic_rigid(c.result, s1(z)));
  expect_exact_witness(c);
}

TEST(LeftMutate, UniversalExtensionHasTheDocumentedBlockShape) {
  Ring z = Ring::integers();
  // Kronecker (S1, S2): Ext(S1, S2) = Z^2, so L_{S1} S2 = [[Y_a, C_a], [0, X_a^2]] of dims (2, 1).
  MutationResult m = left_mutate(kron_s1(z), kron_s2(z));
  EXPECT_EQ(m.mutation_case, MutationCase::UniversalExtension);
  EXPECT_EQ(m.result.dims(), DimVector({2, 1}));
  HomExtResult h = hom_ext(kron_s1(z), kron_s2(z));
  for (std::size_t a = 0; a < 2; ++a)
    EXPECT_EQ(m.result.mat(a), Matrix::hstack(z, 1, {h.ext_cocycles[0][a], h.ext_cocycles[1][a]}));
  EXPECT_TRUE(is_exceptional(m.result));
  EXPECT_TRUE(is_exceptional_pair(m.result, kron_s1(z)));
}

TEST(LeftMutate, RejectsBadInput) {
  Ring z = Ring::integers();
  EXPECT_ERROR(left_mutate(s2(z), s1(z)), ErrorKind::PreconditionViolated);
  EXPECT_ERROR(left_mutate(kron_band(z), kron_s2(z)), ErrorKind::PreconditionViolated);
  Ring r4 = Ring::integers_mod(4);
  EXPECT_ERROR(left_mutate(s1(r4), s2(r4)), ErrorKind::NotComputable);
  EXPECT_ERROR(right_mutate(p1(r4), s1(r4)), ErrorKind::NotComputable);
}

TEST(LeftMutate, OrthogonalPairIsUnchanged) {
  Ring z = Ring::integers();
  Quiver two(2, {});
  Rep a = Rep::simple(z, two, 0), b = Rep::simple(z, two, 1);
  MutationResult m = left_mutate(a, b);
  EXPECT_EQ(m.mutation_case, MutationCase::Unchanged);
  EXPECT_EQ(m.result, b);
  EXPECT_EQ(right_mutate(a, b).result, a);
}

TEST(RightMutate, SpecExamples) {
  Ring z = Ring::integers();
  MutationResult r = right_mutate(p1(z), s1(z));
  EXPECT_EQ(r.mutation_case, MutationCase::KernelOfUniversalMap);
  EXPECT_TRUE(is_isomorphic_rigid(r.result, s2(z)));
  EXPECT_TRUE(is_exceptional_pair(s1(z), r.result));
  expect_exact_witness(r);

  // right after left on (S1, S2) returns S2
  MutationResult l = left_mutate(s1(z), s2(z));
  EXPECT_TRUE(is_isomorphic_rigid(right_mutate(l.result, s1(z)).result, s2(z)));

  // Kronecker: L_{S2} P(1) = S1 and R_{S2} S1 recovers P(1)
  MutationResult k = left_mutate(kron_s2(z), kron_p1(z));
  EXPECT_EQ(k.mutation_case, MutationCase::CokernelOfUniversalMap);
  EXPECT_TRUE(is_isomorphic_rigid(k.result, kron_s1(z)));
  MutationResult back = right_mutate(k.result, kron_s2(z));
  EXPECT_TRUE(is_isomorphic_rigid(back.result, kron_p1(z)));
  expect_exact_witness(back);
}

TEST(Mutation, InverseLawsOnOrbitPairs) {
  for (const char* spec : {"Z", "F:2", "Q"}) {
    Ring r = Ring::parse(spec);
    for (const Quiver& q : {a2(), a3(), kronecker()}) {
      BraidOrbit orbit(q, r, 10);
      for (const auto& [seq, path] : orbit.explore_all())
        for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
          const Rep &x = seq[i], &y = seq[i + 1];
          MutationResult l = left_mutate(x, y);
          expect_exact_witness(l);
          if (l.mutation_case == MutationCase::UniversalExtension) {
            EXPECT_EQ(l.result.dims(), y.dims() + x.dims() * hom_ext(x, y).ext.free_rank());
          }
          EXPECT_TRUE(is_isomorphic_rigid(right_mutate(l.result, x).result, y)) << spec;
          MutationResult rr = right_mutate(x, y);
          expect_exact_witness(rr);
          EXPECT_TRUE(is_exceptional_pair(y, rr.result));
          EXPECT_TRUE(is_isomorphic_rigid(left_mutate(y, rr.result).result, x)) << spec;
        }
    }
  }
}

TEST(Mutation, CommutesWithReduction) {
  Ring z = Ring::integers();
  for (const Quiver& q : {a3(), kronecker()}) {
    BraidOrbit orbit(q, z, 12);
    for (const auto& [seq, path] : orbit.explore_all())
      for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        for (long p : {2, 3, 5}) {
          Ring f = Ring::prime_field(p);
          Rep lz = left_mutate(seq[i], seq[i + 1]).result;
          Rep lf = left_mutate(base_change(seq[i], f), base_change(seq[i + 1], f)).result;
          EXPECT_TRUE(is_isomorphic_rigid(base_change(lz, f), lf));
          Rep rz = right_mutate(seq[i], seq[i + 1]).result;
          Rep rf = right_mutate(base_change(seq[i], f), base_change(seq[i + 1], f)).result;
          EXPECT_TRUE(is_isomorphic_rigid(base_change(rz, f), rf));
        }
  }
}

TEST(BraidAct, SpecExamples) {
  Ring z = Ring::integers();
  ExcSequence s({s1(z), s2(z)});
  ExcSequence t = braid_act(s, 1, false);
  EXPECT_TRUE(is_isomorphic_rigid(t[0], p1(z)));
  EXPECT_EQ(t[1], s1(z));
  expect_itemwise_isomorphic(braid_act(t, 1, true), s);
  expect_itemwise_isomorphic(braid_act(braid_act(s, 1, true), 1, false), s);
  EXPECT_ERROR(braid_act(s, 2, false), ErrorKind::InvalidArgument);
  EXPECT_ERROR(braid_act(s, 0, false), ErrorKind::InvalidArgument);
}

TEST(BraidAct, BraidRelations) {
  const Quiver a4 = Quiver::linear(4);
  for (const char* spec : {"F:2", "Z"}) {
    Ring r = Ring::parse(spec);
    for (const Quiver& q : {a3(), verify::two_into_sink()}) {
      ExcSequence s = standard_sequence(q, r);
      for (const auto& pre : {word({}), word({1}), word({-2}), word({2, 1})}) {
        ExcSequence base = braid_act(s, pre);
        expect_itemwise_isomorphic(braid_act(base, word({1, 2, 1})), braid_act(base, word({2, 1, 2})));
        expect_itemwise_isomorphic(braid_act(base, word({-1, -2, -1})), braid_act(base, word({-2, -1, -2})));
        expect_itemwise_isomorphic(braid_act(base, word({1, -1})), base);
        expect_itemwise_isomorphic(braid_act(base, word({-2, 2})), base);
      }
    }
    ExcSequence s4 = standard_sequence(a4, r);
    expect_itemwise_isomorphic(braid_act(s4, word({1, 3})), braid_act(s4, word({3, 1})));
    expect_itemwise_isomorphic(braid_act(s4, word({2, 3, 2})), braid_act(s4, word({3, 2, 3})));
  }
}

TEST(ExcSequenceType, ValidatesOnConstruction) {
  Ring z = Ring::integers();
  EXPECT_ERROR(ExcSequence({s2(z), s1(z)}), ErrorKind::PreconditionViolated);
  EXPECT_ERROR(ExcSequence({kron_band(z)}), ErrorKind::PreconditionViolated);
  EXPECT_ERROR(ExcSequence({s1(z), s2(Ring::rationals())}), ErrorKind::IncompatibleBase);
  EXPECT_NO_THROW(ExcSequence({s1(z), s2(z)}));
}

TEST(StandardSequence, SpecExamples) {
  Ring z = Ring::integers();
  ExcSequence a = standard_sequence(a2(), z);
  EXPECT_EQ(a.dims(), (std::vector<DimVector>{{1, 0}, {0, 1}}));
  ExcSequence none = standard_sequence(Quiver(3, {}), z);
  EXPECT_EQ(none.dims(), (std::vector<DimVector>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  EXPECT_EQ(standard_sequence(kronecker(), z).dims(), (std::vector<DimVector>{{1, 0}, {0, 1}}));
  // arrows 2 -> 1: vertex 2 first
  EXPECT_EQ(standard_sequence(Quiver::from_one_based(2, {{2, 1}}), z).dims(),
            (std::vector<DimVector>{{0, 1}, {1, 0}}));
  EXPECT_ERROR(standard_sequence(loop(), z), ErrorKind::CyclicQuiver);
  EXPECT_ERROR(standard_sequence(Quiver::from_one_based(2, {{1, 2}, {2, 1}}), z), ErrorKind::CyclicQuiver);
}

TEST(OrbitSearch, SpecExamples) {
  Ring z = Ring::integers();
  auto a = orbit_search(a2(), {1, 1}, 10, z);
  ASSERT_TRUE(a);
  EXPECT_TRUE(is_isomorphic_rigid(*a, p1(z)));
  auto k = orbit_search(kronecker(), {1, 2}, 10, z);
  ASSERT_TRUE(k);
  EXPECT_TRUE(is_isomorphic_rigid(*k, kron_p1(z)));
  EXPECT_FALSE(orbit_search(kronecker(), {1, 1}, 10, z));
  EXPECT_FALSE(orbit_search(kronecker(), {2, 3}, 4, z));
  auto big = orbit_search(kronecker(), {3, 4}, 10, Ring::rationals());
  ASSERT_TRUE(big);
  EXPECT_TRUE(is_exceptional(*big));
}

TEST(OrbitSearch, EveryVisitedItemIsExceptionalWithTitsFormOne) {
  for (const Quiver& q : {a3(), kronecker(), verify::two_into_sink()}) {
    BraidOrbit orbit(q, Ring::integers(), 12);
    for (const auto& [seq, path] : orbit.explore_all()) {
      ExcSequence replay = braid_act(standard_sequence(q, Ring::integers()), path);
      EXPECT_EQ(replay.dims(), seq.dims());
      for (const auto& x : seq.items()) {
        EXPECT_EQ(euler_form(q, x.dims(), x.dims()), 1);
        EXPECT_LE(x.dims().total(), 12u);
      }
    }
  }
}

TEST(OrbitSearch, FindAllReturnsDistinctPresentations) {
  BraidOrbit orbit(kronecker(), Ring::integers(), 12, 3);
  auto hits = orbit.find_all({1, 2}, 3);
  ASSERT_GE(hits.size(), 1u);
  for (std::size_t i = 0; i < hits.size(); ++i) {
    auto replay = braid_act(standard_sequence(kronecker(), Ring::integers()), hits[i].path).dims();
    EXPECT_NE(std::find(replay.begin(), replay.end(), DimVector({1, 2})), replay.end());
    EXPECT_EQ(hits[i].rep.dims(), DimVector({1, 2}));
    for (std::size_t j = 0; j < i; ++j) {
      EXPECT_FALSE(hits[i].rep == hits[j].rep);
      EXPECT_TRUE(is_isomorphic_rigid(hits[i].rep, hits[j].rep));
    }
  }
}
