#include <gtest/gtest.h>

#include <string>

#include "tightsigma/term.hpp"

using namespace tightsigma;

namespace {

bool implies(const BoolPoly& p, const BoolPoly& q) { return (p & !q).is_zero(); }

BoolPoly cube(std::size_t arity, const std::vector<Literal>& lits) {
  BoolPoly c = BoolPoly::constant(arity, true);
  for (const Literal& l : lits) {
    const auto v = BoolPoly::variable(arity, l.var);
    c = c & (l.positive ? v : !v);
  }
  return c;
}

} // namespace

TEST(ParseTerm, PrecedenceAndOperators) {
  // & binds tighter than ^, which binds tighter than |.
  EXPECT_EQ(parse_term("x1 | x2 & x3"), parse_term("x1 | (x2 & x3)"));
  EXPECT_EQ(parse_term("x1 ^ x2 & x3"), parse_term("x1 ^ (x2 & x3)"));
  EXPECT_EQ(parse_term("x1 | x2 ^ x3"), parse_term("x1 | (x2 ^ x3)"));
  EXPECT_EQ(parse_term("x1 \\ x2"), parse_term("x1 & !x2"));
  EXPECT_EQ(parse_term("!!x1"), parse_term("x1"));
  EXPECT_EQ(parse_term("  x1&x2 "), parse_term("x1 & x2"));
}

TEST(ParseTerm, ArityAndConstants) {
  EXPECT_EQ(parse_term("x3").arity(), 3u);
  EXPECT_EQ(parse_term("x1", 4).arity(), 4u);
  EXPECT_EQ(parse_term("0").arity(), 0u);
  EXPECT_TRUE(parse_term("1", 2).is_one());
  EXPECT_TRUE(parse_term("x1 & !x1").is_zero());
}

TEST(ParseTerm, Errors) {
  for (const char* bad : {"", "x0", "x1 &", "(x1", "x1)", "y1", "x1 x2", "!"}) {
    try {
      parse_term(bad);
      ADD_FAILURE() << "accepted '" << bad << "'";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::parse) << bad;
    }
  }
  EXPECT_THROW(parse_term("x3", 2), Error);
  try {
    parse_term("x13");
    ADD_FAILURE() << "accepted x13";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::size_bound);
  }
}

TEST(FormatDnf, CanonicalForms) {
  EXPECT_EQ(format_dnf(parse_term("x1 & !x2")), "x1 & !x2");
  EXPECT_EQ(format_dnf(parse_term("x1 & x2 | x1 & !x2")), "x1");
  EXPECT_EQ(format_dnf(parse_term("x1 ^ x2")), "x1 & !x2 | !x1 & x2");
  EXPECT_EQ(format_dnf(parse_term("0", 2)), "0");
  EXPECT_EQ(format_dnf(parse_term("1", 2)), "1");
  // Consensus term x2 & x3 is prime and appears in the Blake form.
  EXPECT_EQ(format_dnf(parse_term("x1 & x2 | !x1 & x3")), "x1 & x2 | !x1 & x3 | x2 & x3");
  EXPECT_EQ(format_dnf(parse_term("x1 | x2"), {"a", "b"}), "a | b");
}

// Oracle: every listed cube is an implicant, dropping any literal breaks it,
// every prime implicant is listed (checked by enumerating all cubes), and
// the text parses back to the same table.
TEST(FormatDnf, BlakeFormExhaustiveArity3) {
  for (std::uint64_t table = 0; table < 256; ++table) {
    const auto p = BoolPoly::from_bits(3, table);
    const auto primes = prime_implicants(p);
    for (const auto& lits : primes) {
      ASSERT_TRUE(implies(cube(3, lits), p));
      for (std::size_t drop = 0; drop < lits.size(); ++drop) {
        auto fewer = lits;
        fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(drop));
        ASSERT_FALSE(implies(cube(3, fewer), p));
      }
    }
    std::size_t expected = 0;
    for (int code = 0; code < 27; ++code) {
      std::vector<Literal> lits;
      int c = code;
      for (std::size_t v = 0; v < 3; ++v, c /= 3) {
        if (c % 3 != 2) {
          lits.push_back({v, c % 3 == 1});
        }
      }
      if (!implies(cube(3, lits), p)) {
        continue;
      }
      bool prime = true;
      for (std::size_t drop = 0; drop < lits.size(); ++drop) {
        auto fewer = lits;
        fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(drop));
        prime = prime && !implies(cube(3, fewer), p);
      }
      expected += prime ? 1 : 0;
    }
    ASSERT_EQ(primes.size(), expected) << table;
    ASSERT_EQ(parse_term(format_dnf(p), 3), p) << format_dnf(p);
  }
}
