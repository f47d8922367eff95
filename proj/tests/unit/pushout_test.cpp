#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tightsigma/pushout.hpp"
#include "tightsigma/random.hpp"

using namespace tightsigma;

namespace {

SubalgebraPartition blocks(std::size_t atoms, std::vector<std::vector<std::size_t>> b) {
  return SubalgebraPartition::from_blocks(atoms, b);
}

AmalgamInput random_input(Rng& rng, std::size_t max_atoms) {
  const std::size_t a = rng.between(1, max_atoms);
  const std::size_t s = rng.between(1, max_atoms);
  const std::size_t k = rng.between(1, std::min(a, s));
  const auto labels = [&](std::size_t n) {
    std::vector<std::size_t> l(n);
    for (std::size_t i = 0; i < n; ++i) {
      l[i] = i < k ? i : rng.below(k);
    }
    rng.shuffle(l);
    return SubalgebraPartition::from_labels(l);
  };
  std::vector<std::size_t> matching(k);
  for (std::size_t i = 0; i < k; ++i) {
    matching[i] = i;
  }
  rng.shuffle(matching);
  return AmalgamInput{a, s, labels(a), labels(s), matching};
}

} // namespace

TEST(Morphism, Basics) {
  const Morphism h(2, {0, 0, 1});
  EXPECT_EQ(h.apply(Element::of({0})), Element::of({0, 1}));
  EXPECT_EQ(h.apply(Element::of({1})), Element::of({2}));
  EXPECT_TRUE(h.is_injective());
  EXPECT_FALSE(Morphism(2, {0, 0}).is_injective());
  EXPECT_THROW(Morphism(2, {0, 2}), Error);
  const Morphism g(3, {2, 0});
  EXPECT_EQ(h.then(g).dual(), (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(h.then(g).apply(Element::of({1})), g.apply(h.apply(Element::of({1}))));
  EXPECT_EQ(Morphism::identity(3).apply(Element::of({0, 2})), Element::of({0, 2}));
}

TEST(Morphism, EnumerationCountsAndPreservesOperations) {
  const auto all = all_morphisms(2, 3);
  EXPECT_EQ(all.size(), 8u); // 2^3 dual maps
  const FiniteAlgebra src(2);
  const FiniteAlgebra dst(3);
  for (const auto& h : all) {
    EXPECT_EQ(h.apply(src.top()), dst.top());
    for (Element a : src.elements()) {
      EXPECT_EQ(h.apply(src.complement(a)), dst.complement(h.apply(a)));
      for (Element b : src.elements()) {
        EXPECT_EQ(h.apply(a & b), h.apply(a) & h.apply(b));
        EXPECT_EQ(h.apply(a | b), h.apply(a) | h.apply(b));
      }
    }
  }
}

TEST(Amalgamate, FreeProductOfTwoFourElementAlgebras) {
  const AmalgamInput in{2, 2, SubalgebraPartition::trivial(2), SubalgebraPartition::trivial(2),
                        {0}};
  const auto out = amalgamate(in);
  EXPECT_EQ(out.algebra.atom_count(), 4u);
  EXPECT_EQ(out.algebra.element_count(), 16u);
  EXPECT_TRUE(verify_pushout(out.diagram(in)).ok());
}

TEST(Amalgamate, CopyingRGivesA) {
  const auto r_in_a = blocks(3, {{0}, {1, 2}});
  const AmalgamInput in{3, 2, r_in_a, SubalgebraPartition::discrete(2), {1, 0}};
  const auto out = amalgamate(in);
  EXPECT_EQ(out.algebra.atom_count(), 3u);
  EXPECT_TRUE(out.embed_a.is_injective());
  EXPECT_EQ(out.embed_a.target_atoms(), 3u);
}

TEST(Amalgamate, MatchedPairs) {
  const AmalgamInput in{3, 3, blocks(3, {{0}, {1, 2}}), blocks(3, {{0, 1}, {2}}), {0, 1}};
  const auto out = amalgamate(in);
  using P = std::pair<std::size_t, std::size_t>;
  EXPECT_EQ(out.atom_pairs, (std::vector<P>{{0, 0}, {0, 1}, {1, 2}, {2, 2}}));
  EXPECT_EQ(amalgam_atom_count(in), 4u);
  EXPECT_TRUE(verify_pushout(out.diagram(in)).ok());
}

TEST(Amalgamate, RejectsBadMatching) {
  EXPECT_THROW(amalgamate({2, 2, SubalgebraPartition::discrete(2),
                           SubalgebraPartition::discrete(2), {0, 0}}),
               Error);
  EXPECT_THROW(amalgamate({2, 2, SubalgebraPartition::discrete(2),
                           SubalgebraPartition::trivial(2), {0}}),
               Error);
  EXPECT_THROW(amalgamate({2, 3, SubalgebraPartition::trivial(2),
                           SubalgebraPartition::trivial(2), {0}}),
               Error);
}

TEST(Amalgamate, RandomInputsVerifyAndCountAtoms) {
  Rng rng(3);
  for (int round = 0; round < 300; ++round) {
    const auto in = random_input(rng, 5);
    const auto out = amalgamate(in);
    ASSERT_TRUE(verify_pushout(out.diagram(in)).ok());
    std::size_t expected = 0;
    for (std::size_t i = 0; i < in.r_in_a.block_count(); ++i) {
      expected += in.r_in_a.blocks()[i].count() * in.r_in_s.blocks()[in.matching[i]].count();
    }
    ASSERT_EQ(out.algebra.atom_count(), expected);
    // ι_A and ι_S agree on R.
    for (std::size_t i = 0; i < in.r_in_a.block_count(); ++i) {
      ASSERT_EQ(out.embed_a.apply(in.r_in_a.blocks()[i]),
                out.embed_s.apply(in.r_in_s.blocks()[in.matching[i]]));
    }
  }
}

TEST(VerifyPushout, Examples) {
  const auto d4 = SubalgebraPartition::discrete(4);
  const auto a = blocks(4, {{0, 1}, {2, 3}});
  const auto s = blocks(4, {{0, 2}, {1, 3}});
  // Independent generators: a genuine push-out over the trivial algebra.
  EXPECT_TRUE(verify_pushout({d4, a, s, SubalgebraPartition::trivial(4)}).ok());
  EXPECT_TRUE(verify_pushout({d4, d4, d4, d4}).ok());

  const auto both = verify_pushout({d4, a, a, SubalgebraPartition::trivial(4)});
  EXPECT_EQ(both.violations,
            (std::vector<PushoutViolation>{PushoutViolation::not_generating,
                                           PushoutViolation::wrong_intersection}));
  const auto bad_r = verify_pushout({d4, a, s, d4});
  EXPECT_EQ(bad_r.violations.front(), PushoutViolation::not_a_square);

  const auto d3 = SubalgebraPartition::discrete(3);
  const auto c = verify_pushout({d3, blocks(3, {{0}, {1, 2}}), blocks(3, {{0, 1}, {2}}),
                                 SubalgebraPartition::trivial(3)});
  EXPECT_EQ(c.violations, (std::vector<PushoutViolation>{PushoutViolation::not_commuting}));
  EXPECT_EQ(to_string(PushoutViolation::not_commuting), "not_commuting");
}

TEST(Mediating, UniqueForPushoutAndIncompatibleIsEmpty) {
  const AmalgamInput in{2, 2, SubalgebraPartition::trivial(2), SubalgebraPartition::trivial(2),
                        {0}};
  const auto d = amalgamate(in).diagram(in);
  for (const auto& f : all_morphisms(2, 2)) {
    for (const auto& g : all_morphisms(2, 2)) {
      const auto m = mediating_morphisms(d, 2, f, g);
      EXPECT_TRUE(m.compatible);
      EXPECT_EQ(m.morphisms.size(), 1u);
    }
  }
  const AmalgamInput copy{2, 2, SubalgebraPartition::discrete(2),
                          SubalgebraPartition::discrete(2), {0, 1}};
  const auto dc = amalgamate(copy).diagram(copy);
  const auto m = mediating_morphisms(dc, 2, Morphism(2, {0, 1}), Morphism(2, {1, 0}));
  EXPECT_FALSE(m.compatible);
  EXPECT_TRUE(m.morphisms.empty());
}

// A square that does not generate its top admits several mediating maps
// into the two-element algebra.
TEST(Mediating, NonGeneratingSquareIsNotUnique) {
  const auto d4 = SubalgebraPartition::discrete(4);
  const auto a = blocks(4, {{0, 1}, {2, 3}});
  const Diagram d{d4, a, a, a};
  bool found = false;
  for (const auto& f : all_morphisms(2, 1)) {
    const auto m = mediating_morphisms(d, 1, f, f);
    found = found || m.morphisms.size() >= 2;
  }
  EXPECT_TRUE(found);
}

// Brute-force oracle: count h over all morphisms top -> C directly.
TEST(Mediating, MatchesDirectEnumeration) {
  Rng rng(5);
  for (int round = 0; round < 40; ++round) {
    const auto in = random_input(rng, 3);
    const auto d = amalgamate(in).diagram(in);
    for (std::size_t c = 1; c <= 2; ++c) {
      for (const auto& f : all_morphisms(d.a.block_count(), c)) {
        for (const auto& g : all_morphisms(d.s.block_count(), c)) {
          const auto m = mediating_morphisms(d, c, f, g);
          std::size_t count = 0;
          for (const auto& h : all_morphisms(d.top.block_count(), c)) {
            bool ok = true;
            for (std::size_t i = 0; i < d.a.block_count(); ++i) {
              ok = ok && h.apply(d.a.blocks()[i]) == f.apply(Element::atom(i));
            }
            for (std::size_t i = 0; i < d.s.block_count(); ++i) {
              ok = ok && h.apply(d.s.blocks()[i]) == g.apply(Element::atom(i));
            }
            count += ok ? 1 : 0;
          }
          ASSERT_EQ(m.morphisms.size(), count);
          if (m.compatible) {
            ASSERT_EQ(count, 1u);
          }
        }
      }
    }
  }
}
