#include <gtest/gtest.h>

#include <algorithm>

#include "tightsigma/error.hpp"
#include "tightsigma/random.hpp"
#include "tightsigma/sunflower.hpp"

using namespace tightsigma;

namespace {

// Oracle: try every k-subset of the family.
bool has_sunflower(const SetFamily& family, std::size_t k) {
  const std::size_t n = family.size();
  std::vector<bool> pick(n, false);
  std::fill(pick.end() - static_cast<std::ptrdiff_t>(std::min(k, n)), pick.end(), true);
  if (k > n) {
    return false;
  }
  do {
    Sunflower c;
    for (std::size_t i = 0; i < n; ++i) {
      if (pick[i]) {
        c.members.push_back(i);
      }
    }
    FiniteSet kernel;
    const auto& a = family[c.members[0]];
    const auto& b = family[c.members[1]];
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(kernel));
    c.kernel = kernel;
    if (is_sunflower(family, c)) {
      return true;
    }
  } while (std::next_permutation(pick.begin(), pick.end()));
  return false;
}

} // namespace

TEST(Sunflower, Examples) {
  const SetFamily star{{1, 2}, {1, 3}, {1, 4}};
  const auto r = sunflower(star, 3);
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.found->kernel, (FiniteSet{1}));
  EXPECT_EQ(r.found->members, (std::vector<std::size_t>{0, 1, 2}));

  const SetFamily disjoint{{1}, {2, 3}, {4}};
  const auto d = sunflower(disjoint, 3);
  ASSERT_TRUE(d.found);
  EXPECT_TRUE(d.found->kernel.empty());

  const SetFamily triangle{{1, 2}, {2, 3}, {1, 3}};
  const auto t = sunflower(triangle, 3);
  EXPECT_FALSE(t.found);
  EXPECT_TRUE(t.exhaustive);
  EXPECT_FALSE(t.bound_applies);

  EXPECT_THROW(sunflower(star, 1), Error);
}

TEST(Sunflower, Bound) {
  EXPECT_EQ(sunflower_bound(2, 3), 8u);
  EXPECT_EQ(sunflower_bound(3, 2), 6u);
  EXPECT_EQ(sunflower_bound(0, 5), 1u);
  EXPECT_EQ(sunflower_bound(40, 1000), SIZE_MAX);
}

TEST(Sunflower, DuplicatesAndOrderAreNormalized) {
  const SetFamily family{{2, 1}, {1, 2, 2}, {3, 1}, {1, 4}};
  const auto r = sunflower(family, 3);
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.found->members, (std::vector<std::size_t>{0, 2, 3}));
  EXPECT_TRUE(is_sunflower(family, *r.found));
}

TEST(Sunflower, IsSunflowerRejects) {
  const SetFamily family{{1, 2}, {1, 3}, {2, 3}};
  EXPECT_FALSE(is_sunflower(family, {{1}, {0, 2}}));
  EXPECT_FALSE(is_sunflower(family, {{}, {0, 5}}));
  EXPECT_TRUE(is_sunflower(family, {{1}, {0, 1}}));
}

// Agreement with the subset oracle on small random families.
TEST(Sunflower, MatchesSubsetOracle) {
  Rng rng(17);
  for (int round = 0; round < 400; ++round) {
    SetFamily family;
    const std::size_t n = rng.between(2, 8);
    for (std::size_t i = 0; i < n; ++i) {
      FiniteSet s;
      for (std::size_t x = 0; x < 6; ++x) {
        if (rng.below(3) == 0) {
          s.push_back(x);
        }
      }
      if (std::find(family.begin(), family.end(), s) == family.end()) {
        family.push_back(s);
      }
    }
    const std::size_t k = rng.between(2, 4);
    const auto r = sunflower(family, k);
    ASSERT_EQ(r.found.has_value(), has_sunflower(family, k));
    if (r.found) {
      ASSERT_EQ(r.found->members.size(), k);
      ASSERT_TRUE(is_sunflower(family, *r.found));
    }
  }
}

TEST(Sunflower, AlwaysSucceedsAboveBound) {
  Rng rng(23);
  for (int round = 0; round < 200; ++round) {
    // 3-uniform with k = 2: any 7 distinct sets contain a 2-sunflower
    // trivially; use k = 3 over 3-sets, bound 3!·2^3 = 48.
    SetFamily family;
    while (family.size() < 49) {
      FiniteSet s;
      while (s.size() < 3) {
        const std::size_t x = rng.below(12);
        if (std::find(s.begin(), s.end(), x) == s.end()) {
          s.push_back(x);
        }
      }
      std::sort(s.begin(), s.end());
      if (std::find(family.begin(), family.end(), s) == family.end()) {
        family.push_back(s);
      }
    }
    const auto r = sunflower(family, 3, 0);
    ASSERT_TRUE(r.bound_applies);
    ASSERT_TRUE(r.found);
    ASSERT_TRUE(is_sunflower(family, *r.found));
  }
}
