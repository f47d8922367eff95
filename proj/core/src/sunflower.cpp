#include "tightsigma/sunflower.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <utility>

#include "tightsigma/error.hpp"

namespace tightsigma {

namespace {

struct Item {
  std::size_t index;
  FiniteSet set;
};

FiniteSet normalized(FiniteSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

FiniteSet intersection(const FiniteSet& a, const FiniteSet& b) {
  FiniteSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool disjoint(const FiniteSet& a, const FiniteSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) {
      return false;
    }
    *i < *j ? ++i : ++j;
  }
  return true;
}

std::optional<Sunflower> erdos_rado(const std::vector<Item>& items, std::size_t k,
                                    FiniteSet kernel) {
  std::vector<std::size_t> petals;
  FiniteSet used;
  for (const Item& it : items) {
    if (disjoint(it.set, used)) {
      petals.push_back(it.index);
      FiniteSet merged;
      std::set_union(used.begin(), used.end(), it.set.begin(), it.set.end(),
                     std::back_inserter(merged));
      used = std::move(merged);
      if (petals.size() == k) {
        std::sort(petals.begin(), petals.end());
        return Sunflower{std::move(kernel), std::move(petals)};
      }
    }
  }
  if (used.empty()) {
    return std::nullopt;
  }
  std::size_t best = used.front();
  std::size_t best_count = 0;
  for (std::size_t x : used) {
    const auto count = static_cast<std::size_t>(std::count_if(
        items.begin(), items.end(),
        [x](const Item& it) { return std::binary_search(it.set.begin(), it.set.end(), x); }));
    if (count > best_count) {
      best = x;
      best_count = count;
    }
  }
  if (best_count < k) {
    return std::nullopt;
  }
  std::vector<Item> link;
  for (const Item& it : items) {
    if (std::binary_search(it.set.begin(), it.set.end(), best)) {
      FiniteSet rest;
      std::remove_copy(it.set.begin(), it.set.end(), std::back_inserter(rest), best);
      link.push_back({it.index, std::move(rest)});
    }
  }
  kernel.insert(std::upper_bound(kernel.begin(), kernel.end(), best), best);
  return erdos_rado(link, k, std::move(kernel));
}

bool exhaustive_search(const std::vector<Item>& items, std::size_t k, std::size_t start,
                       std::vector<std::size_t>& chosen, FiniteSet& kernel) {
  if (chosen.size() == k) {
    return true;
  }
  for (std::size_t i = start; i + (k - chosen.size()) <= items.size(); ++i) {
    const FiniteSet& cand = items[i].set;
    if (chosen.size() == 1) {
      kernel = intersection(items[chosen[0]].set, cand);
    } else if (chosen.size() > 1) {
      const bool fits = std::all_of(chosen.begin(), chosen.end(), [&](std::size_t c) {
        return intersection(items[c].set, cand) == kernel;
      });
      if (!fits) {
        continue;
      }
    }
    chosen.push_back(i);
    if (exhaustive_search(items, k, i + 1, chosen, kernel)) {
      return true;
    }
    chosen.pop_back();
  }
  return false;
}

} // namespace

std::size_t sunflower_bound(std::size_t s, std::size_t k) {
  constexpr std::size_t cap = std::numeric_limits<std::size_t>::max();
  std::size_t out = 1;
  for (std::size_t i = 1; i <= s; ++i) {
    const std::size_t factor = i * (k - 1);
    if (factor != 0 && out > cap / factor) {
      return cap;
    }
    out *= factor;
  }
  return out;
}

SunflowerOutcome sunflower(const SetFamily& family, std::size_t k, std::size_t exhaustive_limit) {
  if (k < 2) {
    throw Error(ErrorKind::precondition, "sunflower size k must be at least 2");
  }
  std::vector<Item> items;
  std::map<FiniteSet, std::size_t> seen;
  for (std::size_t i = 0; i < family.size(); ++i) {
    FiniteSet s = normalized(family[i]);
    if (seen.emplace(s, i).second) {
      items.push_back({i, std::move(s)});
    }
  }

  SunflowerOutcome outcome;
  if (!items.empty()) {
    const std::size_t s = items.front().set.size();
    const bool uniform = std::all_of(items.begin(), items.end(),
                                     [s](const Item& it) { return it.set.size() == s; });
    outcome.bound_applies = uniform && items.size() > sunflower_bound(s, k);
  }

  outcome.found = erdos_rado(items, k, {});
  if (outcome.found || items.size() > exhaustive_limit) {
    return outcome;
  }
  outcome.exhaustive = true;
  std::vector<std::size_t> chosen;
  FiniteSet kernel;
  if (exhaustive_search(items, k, 0, chosen, kernel)) {
    Sunflower found{kernel, {}};
    for (std::size_t c : chosen) {
      found.members.push_back(items[c].index);
    }
    outcome.found = std::move(found);
  }
  return outcome;
}

bool is_sunflower(const SetFamily& family, const Sunflower& candidate) {
  std::vector<FiniteSet> sets;
  for (std::size_t m : candidate.members) {
    if (m >= family.size()) {
      return false;
    }
    sets.push_back(normalized(family[m]));
  }
  const FiniteSet kernel = normalized(candidate.kernel);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (!std::includes(sets[i].begin(), sets[i].end(), kernel.begin(), kernel.end())) {
      return false;
    }
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      if (sets[i] == sets[j] || intersection(sets[i], sets[j]) != kernel) {
        return false;
      }
    }
  }
  return true;
}

} // namespace tightsigma
