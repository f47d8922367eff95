#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tightsigma/boolean.hpp"
#include "tightsigma/poly.hpp"
#include "tightsigma/term.hpp"

using namespace tightsigma;

TEST(Element, SetOperations) {
  const Element a = Element::of({0, 1});
  const Element b = Element::of({1, 2});
  EXPECT_EQ(a & b, Element::of({1}));
  EXPECT_EQ(a | b, Element::of({0, 1, 2}));
  EXPECT_EQ(a ^ b, Element::of({0, 2}));
  EXPECT_EQ(a - b, Element::of({0}));
  EXPECT_EQ(a.count(), 2u);
  EXPECT_EQ((a | b).atoms(), (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(to_string(a), "{0,1}");
  EXPECT_EQ(to_string(Element{}), "{}");
}

TEST(FiniteAlgebra, RejectsEmptyAndOversized) {
  EXPECT_THROW(FiniteAlgebra(0), Error);
  EXPECT_THROW(FiniteAlgebra(65), Error);
  EXPECT_NO_THROW(FiniteAlgebra(64));
}

TEST(FiniteAlgebra, ComplementAndMembership) {
  const FiniteAlgebra alg(3);
  EXPECT_EQ(alg.element_count(), 8u);
  EXPECT_EQ(alg.elements().size(), 8u);
  EXPECT_EQ(alg.complement(Element::of({0})), Element::of({1, 2}));
  EXPECT_TRUE(alg.contains(Element::of({2})));
  EXPECT_FALSE(alg.contains(Element::of({3})));
  try {
    alg.require(Element::of({5}));
    FAIL() << "expected a foreign element error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::foreign_element);
  }
}

TEST(Leq, Examples) {
  const FiniteAlgebra alg(3);
  EXPECT_TRUE(leq(alg, Element::of({0}), Element::of({0, 1})));
  EXPECT_FALSE(leq(alg, Element::of({0, 2}), Element::of({0, 1})));
  for (Element a : alg.elements()) {
    EXPECT_TRUE(leq(alg, Element{}, a));
  }
  EXPECT_THROW(leq(alg, Element::of({4}), Element{}), Error);
}

// Boolean algebra laws, exhaustively on 4 atoms.
TEST(Leq, LatticeLawsExhaustive) {
  const FiniteAlgebra alg(4);
  const auto all = alg.elements();
  for (Element a : all) {
    EXPECT_TRUE(leq(alg, a, a));
    EXPECT_EQ(a & alg.complement(a), alg.bottom());
    EXPECT_EQ(a | alg.complement(a), alg.top());
    for (Element b : all) {
      if (leq(alg, a, b) && leq(alg, b, a)) {
        EXPECT_EQ(a, b);
      }
      EXPECT_EQ(leq(alg, a, b), (a & b) == a);
      EXPECT_EQ(alg.complement(a & b), alg.complement(a) | alg.complement(b));
      EXPECT_EQ((a & b).bits(), a.bits() & b.bits());
      for (Element c : all) {
        if (leq(alg, a, b) && leq(alg, b, c)) {
          EXPECT_TRUE(leq(alg, a, c));
        }
        EXPECT_EQ(a & (b | c), (a & b) | (a & c));
        // Meet is the greatest lower bound.
        if (leq(alg, c, a) && leq(alg, c, b)) {
          EXPECT_TRUE(leq(alg, c, a & b));
        }
      }
    }
  }
}

TEST(EvalPoly, Examples) {
  const FiniteAlgebra alg(3);
  const auto diff = parse_term("x1 & !x2");
  const std::vector<Element> args{Element::of({0, 1}), Element::of({1})};
  EXPECT_EQ(eval_poly(diff, args, alg), Element::of({0}));

  const auto x1 = BoolPoly::variable(1, 0);
  for (Element a : alg.elements()) {
    const std::vector<Element> one{a};
    EXPECT_EQ(eval_poly(x1, one, alg), a);
  }
  const auto xor2 = parse_term("x1 ^ x2");
  const std::vector<Element> same{Element::of({0}), Element::of({0})};
  EXPECT_EQ(eval_poly(xor2, same, alg), Element{});
}

TEST(EvalPoly, Errors) {
  const FiniteAlgebra alg(2);
  const auto p = parse_term("x1 & x2");
  const std::vector<Element> short_args{Element{}};
  EXPECT_THROW(eval_poly(p, short_args, alg), Error);
  const std::vector<Element> foreign{Element::of({3}), Element{}};
  EXPECT_THROW(eval_poly(p, foreign, alg), Error);
}

TEST(EvalPoly, AgreesWithMintermExpansion) {
  for (std::uint64_t table = 0; table < 256; ++table) {
    const auto p = BoolPoly::from_bits(3, table);
    oracle::for_each_assignment(3, 2, [&](const std::vector<Element>& args) {
      ASSERT_EQ(eval_poly(p, args, FiniteAlgebra(2)).bits(), oracle::eval_minterms(p, args, 2));
    });
  }
}

// Fixing the other coordinates to 0/1, eval is a Boolean homomorphism in the
// remaining one: it commutes with meets, joins and complements.
TEST(EvalPoly, SubstitutionIsHomomorphic) {
  const FiniteAlgebra alg(3);
  const auto all = alg.elements();
  for (std::uint64_t table = 0; table < 256; ++table) {
    const auto p = BoolPoly::from_bits(3, table);
    for (std::size_t var = 0; var < 3; ++var) {
      for (std::uint64_t fixed = 0; fixed < 4; ++fixed) {
        std::vector<Element> args(3);
        std::size_t bit = 0;
        for (std::size_t i = 0; i < 3; ++i) {
          if (i != var) {
            args[i] = ((fixed >> bit++) & 1u) ? alg.top() : alg.bottom();
          }
        }
        const auto f = [&](Element x) {
          args[var] = x;
          return eval_poly(p, args, alg);
        };
        const Element at0 = f(alg.bottom());
        const Element at1 = f(alg.top());
        for (Element x : all) {
          // A unary polynomial maps x to (c0 ∧ ¬x) ∨ (c1 ∧ x).
          ASSERT_EQ(f(x), (at0 - x) | (at1 & x));
        }
      }
    }
  }
}

TEST(BoolPoly, Construction) {
  EXPECT_TRUE(BoolPoly::constant(3, false).is_zero());
  EXPECT_TRUE(BoolPoly::constant(3, true).is_one());
  EXPECT_TRUE(BoolPoly::constant(0, true).is_one());
  const auto x2 = BoolPoly::variable(2, 1);
  EXPECT_FALSE(x2.at(0b01));
  EXPECT_TRUE(x2.at(0b10));
  EXPECT_THROW(BoolPoly::variable(2, 2), Error);
  EXPECT_THROW(BoolPoly::constant(kMaxArity + 1, false), Error);
  const auto big = BoolPoly::variable(kMaxArity, kMaxArity - 1);
  EXPECT_EQ(big.rows(), std::uint64_t{1} << kMaxArity);
  EXPECT_TRUE(big.at(big.rows() - 1));
}

TEST(BoolPoly, Equality) {
  EXPECT_TRUE(polys_equal(parse_term("x1 & x2"), parse_term("!(!x1 | !x2)")));
  EXPECT_FALSE(polys_equal(parse_term("x1", 2), parse_term("x2")));
  const auto p = parse_term("x1 ^ (x2 | x3)");
  EXPECT_TRUE(polys_equal(p, p));
  EXPECT_THROW(polys_equal(parse_term("x1"), parse_term("x2")), Error);
}

TEST(BoolPoly, CofactorKeepsOrder) {
  // P = x1 & !x2 | x3; fixing x2 := 0 leaves x1 | x3 over (x1, x3).
  const auto p = parse_term("x1 & !x2 | x3");
  EXPECT_EQ(p.cofactor(1, false), parse_term("x1 | x2"));
  EXPECT_EQ(p.cofactor(1, true), parse_term("x2", 2));
  EXPECT_THROW(p.cofactor(3, false), Error);
}

TEST(BoolPoly, OperatorsRejectArityMismatch) {
  EXPECT_THROW(parse_term("x1") & parse_term("x2"), Error);
  const auto p = parse_term("x1 | x2");
  EXPECT_EQ(!(!p), p);
  EXPECT_EQ(p ^ p, BoolPoly::constant(2, false));
}
