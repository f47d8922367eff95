#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tightsigma/elimination.hpp"
#include "tightsigma/term.hpp"

using namespace tightsigma;

TEST(Eliminate, Examples) {
  const auto diff = eliminate(parse_term("x1 & !x2"), 1);
  EXPECT_EQ(diff.lower, parse_term("x1"));
  EXPECT_TRUE(diff.upper.is_one());
  EXPECT_EQ(diff.upper.arity(), 1u);

  const auto id = eliminate(parse_term("x1"), 0);
  EXPECT_TRUE(id.lower.is_zero());
  EXPECT_TRUE(id.upper.is_zero());
  EXPECT_EQ(id.lower.arity(), 0u);

  const auto eq = eliminate(parse_term("x1 ^ x2"), 1);
  EXPECT_EQ(eq.lower, parse_term("x1"));
  EXPECT_EQ(eq.upper, parse_term("x1"));

  EXPECT_THROW(eliminate(parse_term("x1 & x2"), 2), Error);
}

// P(a) = 0 iff P⁻ ≤ a_k ≤ P⁺, every P of arity ≤ 3, every k, all
// assignments in 2- and 3-atom algebras.
TEST(Eliminate, IntervalFormExhaustive) {
  for (std::size_t arity = 1; arity <= 3; ++arity) {
    for (std::uint64_t table = 0; table < (std::uint64_t{1} << (1u << arity)); ++table) {
      const auto p = BoolPoly::from_bits(arity, table);
      for (std::size_t k = 0; k < arity; ++k) {
        const auto e = eliminate(p, k);
        for (std::size_t atoms : {2u, 3u}) {
          if (arity == 3 && atoms == 3 && table % 7 != 0) {
            continue; // 8^3 assignments per table; a stride keeps this test quick
          }
          const FiniteAlgebra alg(atoms);
          oracle::for_each_assignment(arity, atoms, [&](const std::vector<Element>& a) {
            std::vector<Element> rest;
            for (std::size_t i = 0; i < arity; ++i) {
              if (i != k) {
                rest.push_back(a[i]);
              }
            }
            const bool zero = oracle::eval_minterms(p, a, atoms) == 0;
            const Element lo = eval_poly(e.lower, rest, alg);
            const Element hi = eval_poly(e.upper, rest, alg);
            ASSERT_EQ(zero, lo.subset_of(a[k]) && a[k].subset_of(hi));
            // A solution exists in coordinate k exactly when lo ≤ hi.
            if (zero) {
              ASSERT_TRUE(lo.subset_of(hi));
            }
          });
        }
      }
    }
  }
}

TEST(AllSignsVanish, Examples) {
  const FiniteAlgebra alg(3);
  const auto diff = parse_term("x1 & !x2");
  const Element a = Element::of({1, 2});
  const std::vector<Element> same{a, a};
  EXPECT_TRUE(all_signs_vanish(diff, same, same, alg));

  const std::vector<Element> lo1{Element{}};
  const std::vector<Element> hi1{Element::of({0})};
  EXPECT_FALSE(all_signs_vanish(parse_term("x1"), lo1, hi1, alg));

  const std::vector<Element> lows{Element::of({0}), Element::of({0, 1})};
  const std::vector<Element> highs{Element::of({0, 1}), Element::of({0, 1, 2})};
  EXPECT_TRUE(all_signs_vanish(diff, lows, highs, alg));
}

TEST(AllSignsVanish, Errors) {
  const FiniteAlgebra alg(2);
  const auto p = parse_term("x1 & x2");
  const std::vector<Element> one{Element{}};
  EXPECT_THROW(all_signs_vanish(p, one, one, alg), Error);
  const std::vector<Element> lows{Element::of({0}), Element{}};
  const std::vector<Element> highs{Element{}, Element{}};
  EXPECT_THROW(all_signs_vanish(p, lows, highs, alg), Error);
}
