#include <gtest/gtest.h>

#include "tightsigma/ck_norms.hpp"
#include "tightsigma/random.hpp"

using namespace tightsigma;

namespace {

StepFunction fn(std::vector<Rational> v) {
  const FiniteAlgebra alg(v.size());
  return StepFunction(alg, std::move(v));
}

Rational random_rational(Rng& rng, std::int64_t range, std::int64_t den) {
  return Rational(static_cast<std::int64_t>(rng.below(2 * range * den + 1)) - range * den, den);
}

} // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("-3/4"), Rational(-3, 4));
  EXPECT_EQ(parse_rational("6/8"), Rational(3, 4));
  EXPECT_EQ(parse_rational("0.125"), Rational(1, 8));
  EXPECT_EQ(parse_rational("-1.5"), Rational(-3, 2));
  EXPECT_EQ(parse_rational("-0.5"), Rational(-1, 2));
  EXPECT_EQ(to_string(Rational(3)), "3");
  EXPECT_EQ(to_string(Rational(-3, 4)), "-3/4");
  for (const char* bad : {"", "1/0", "a", "1.", "1/2/3", "1.-5"}) {
    EXPECT_THROW(parse_rational(bad), Error) << bad;
  }
}

TEST(SupNorm, Examples) {
  const auto one = StepFunction::constant(FiniteAlgebra(3), 1);
  EXPECT_EQ(sup_norm(one), Rational(1));
  const std::vector<StepFunction> ff{one, one};
  const std::vector<Rational> diff{1, -1};
  EXPECT_EQ(sup_norm(diff, ff), Rational(0));
  const std::vector<StepFunction> f{fn({1, -2, 3})};
  const std::vector<Rational> two{2};
  EXPECT_EQ(sup_norm(two, f), Rational(6));
  EXPECT_EQ(sup_norm(fn({Rational(-7, 2), 3})), Rational(7, 2));
}

TEST(SupNorm, Errors) {
  const std::vector<StepFunction> mixed{fn({1, 2}), fn({1, 2, 3})};
  const std::vector<Rational> c2{1, 1};
  EXPECT_THROW(sup_norm(c2, mixed), Error);
  const std::vector<Rational> c1{1};
  const std::vector<StepFunction> two{fn({1}), fn({2})};
  EXPECT_THROW(sup_norm(c1, two), Error);
  EXPECT_THROW(StepFunction(FiniteAlgebra(2), {1}), Error);
}

TEST(ClopenBracket, Examples) {
  const auto zero = StepFunction::constant(FiniteAlgebra(3), 0);
  EXPECT_EQ(clopen_bracket(zero, -1, 1), Element{});
  EXPECT_EQ(clopen_bracket(fn({0, 1, 2}), 1, Rational(3, 2)), Element::of({0, 1}));
  EXPECT_EQ(clopen_bracket(zero, 0, 1), Element::of({0, 1, 2}));
  EXPECT_THROW(clopen_bracket(zero, 1, 1), Error);
  EXPECT_THROW(clopen_bracket(zero, 2, 1), Error);
}

TEST(ClopenBracket, InclusionsAndMonotonicity) {
  Rng rng(41);
  for (int round = 0; round < 500; ++round) {
    const std::size_t atoms = rng.between(1, 8);
    std::vector<Rational> v(atoms);
    for (auto& x : v) {
      x = random_rational(rng, 3, 4);
    }
    const auto f = fn(v);
    Rational p = random_rational(rng, 3, 4);
    Rational q = p + Rational(static_cast<std::int64_t>(rng.between(1, 8)), 4);
    Rational p2 = p + Rational(static_cast<std::int64_t>(rng.below(8)), 4);
    Rational q2 = std::max(q, p2 + Rational(1, 4));
    const Element c = clopen_bracket(f, p, q);
    for (std::size_t i = 0; i < atoms; ++i) {
      if (f.at(i) <= p) {
        ASSERT_TRUE(c.contains(i));
      }
      if (c.contains(i)) {
        ASSERT_LT(f.at(i), q);
      }
    }
    ASSERT_TRUE(c.subset_of(clopen_bracket(f, p2, q2)));
  }
}

TEST(ChainNorm, SmallExamples) {
  const FiniteAlgebra four(4);
  const std::vector<Element> chain{Element::of({0}), Element::of({0, 1}), Element::of({0, 1, 2}),
                                   Element::of({0, 1, 2, 3})};
  const auto nested = pairing_permutation(Pairing::nested, 2);
  const auto inter = pairing_permutation(Pairing::interleaved, 2);
  EXPECT_EQ(inter, (std::vector<std::size_t>{0, 3, 1, 2}));
  EXPECT_EQ(chain_norm(four, chain, nested), Rational(1));
  EXPECT_EQ(chain_norm(four, chain, inter), Rational(2));

  const FiniteAlgebra two(2);
  const std::vector<Element> pair{Element::of({0}), Element::of({0, 1})};
  EXPECT_EQ(chain_norm(two, pair, pairing_permutation(Pairing::nested, 1)), Rational(1));
  EXPECT_EQ(chain_norm(two, pair, pairing_permutation(Pairing::interleaved, 1)), Rational(1));
}

TEST(ChainNorm, Errors) {
  const FiniteAlgebra three(3);
  const std::vector<Element> not_chain{Element::of({0}), Element::of({1})};
  const std::vector<std::size_t> id{0, 1};
  try {
    chain_norm(three, not_chain, id);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::precondition);
  }
  const std::vector<Element> odd{Element{}};
  const std::vector<std::size_t> one{0};
  EXPECT_THROW(chain_norm(three, odd, one), Error);
  const std::vector<Element> ok{Element::of({0}), Element::of({0, 1})};
  const std::vector<std::size_t> repeat{0, 0};
  EXPECT_THROW(chain_norm(three, ok, repeat), Error);
}

// Independent count: the interleaved sum at an atom equals the number of
// pairs (c_{2i-1}, c_{2i}) whose gap contains it.
TEST(ChainNorm, StandardChainsUpToEight) {
  for (std::size_t n = 1; n <= 8; ++n) {
    const FiniteAlgebra alg(2 * n + 1);
    const auto chain = standard_chain(n);
    ASSERT_EQ(chain_norm(alg, chain, pairing_permutation(Pairing::nested, n)), Rational(1));
    const auto perm = pairing_permutation(Pairing::interleaved, n);
    std::int64_t best = 0;
    for (std::size_t atom = 0; atom < alg.atom_count(); ++atom) {
      std::int64_t sum = 0;
      for (std::size_t i = 0; i < 2 * n; i += 2) {
        sum += (chain[perm[i + 1]].contains(atom) ? 1 : 0) - (chain[perm[i]].contains(atom) ? 1 : 0);
      }
      best = std::max(best, sum < 0 ? -sum : sum);
    }
    ASSERT_EQ(best, static_cast<std::int64_t>(n));
    ASSERT_EQ(chain_norm(alg, chain, perm), Rational(static_cast<std::int64_t>(n)));
  }
}

// Random strict chains with random gaps give the same 1-versus-n values.
TEST(ChainNorm, RandomStrictChains) {
  Rng rng(43);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = rng.between(1, 5);
    const std::size_t atoms = rng.between(2 * n + 1, 20);
    std::vector<std::size_t> order(atoms);
    for (std::size_t i = 0; i < atoms; ++i) {
      order[i] = i;
    }
    rng.shuffle(order);
    // Strictly increasing prefix sizes of a random atom order.
    std::vector<std::size_t> sizes;
    std::size_t size = rng.below(atoms - 2 * n + 1);
    for (std::size_t j = 0; j < 2 * n; ++j) {
      size += 1 + rng.below(atoms - size - (2 * n - 1 - j));
      sizes.push_back(size);
    }
    std::vector<Element> chain;
    for (std::size_t s : sizes) {
      std::vector<std::size_t> picked(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(s));
      chain.push_back(Element::of(picked));
    }
    const FiniteAlgebra alg(atoms);
    ASSERT_EQ(chain_norm(alg, chain, pairing_permutation(Pairing::nested, n)), Rational(1));
    ASSERT_EQ(chain_norm(alg, chain, pairing_permutation(Pairing::interleaved, n)),
              Rational(static_cast<std::int64_t>(n)));
  }
}

TEST(Transfer, GridAndBound) {
  const auto grid = delta_grid(Rational(1, 2), 1);
  EXPECT_EQ(grid.size(), 21u);
  EXPECT_EQ(grid.front(), Rational(-5));
  EXPECT_EQ(grid.back(), Rational(5));
  const std::vector<Rational> coeffs{1, Rational(-3, 2)};
  EXPECT_EQ(transfer_bound(coeffs, Rational(1, 10)), Rational(9, 10));
  EXPECT_THROW(delta_grid(0, 1), Error);
}

// Perturbation experiment: moving values inside their grid cells keeps the
// bracket pattern, and the λ-combination norms move by at most the bound.
TEST(Transfer, PerturbationsStayWithinBound) {
  Rng rng(47);
  for (int round = 0; round < 300; ++round) {
    const Rational delta(1, static_cast<std::int64_t>(rng.between(1, 8)));
    const auto grid = delta_grid(delta, 1);
    const std::size_t atoms = rng.between(1, 6);
    const std::size_t arity = rng.between(1, 3);
    const FiniteAlgebra alg(atoms);
    std::vector<StepFunction> fs;
    std::vector<StepFunction> gs;
    std::vector<Rational> coeffs;
    for (std::size_t i = 0; i < arity; ++i) {
      std::vector<Rational> fv(atoms);
      std::vector<Rational> gv(atoms);
      for (std::size_t a = 0; a < atoms; ++a) {
        // Choose a cell (k·δ, (k+1)·δ] inside [-5, 5] and two points in it.
        const auto cells = static_cast<std::int64_t>(grid.size()) - 1;
        const Rational lo = grid[static_cast<std::size_t>(rng.below(static_cast<std::size_t>(cells)))];
        fv[a] = lo + delta * Rational(static_cast<std::int64_t>(rng.between(1, 16)), 16);
        gv[a] = lo + delta * Rational(static_cast<std::int64_t>(rng.between(1, 16)), 16);
      }
      fs.emplace_back(alg, fv);
      gs.emplace_back(alg, gv);
      coeffs.push_back(random_rational(rng, 2, 3));
    }
    ASSERT_TRUE(same_brackets(fs, gs, grid));
    const Rational gap = sup_norm(coeffs, fs) - sup_norm(coeffs, gs);
    ASSERT_LE(gap < 0 ? -gap : gap, transfer_bound(coeffs, delta));
  }
}

TEST(Transfer, DifferentCellsChangeThePattern) {
  const auto grid = delta_grid(Rational(1, 4), 1);
  const std::vector<StepFunction> f{fn({Rational(1, 8)})};
  const std::vector<StepFunction> g{fn({Rational(3, 8)})};
  EXPECT_FALSE(same_brackets(f, g, grid));
}
