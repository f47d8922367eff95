#include "tightsigma/symmetry.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "tightsigma/random.hpp"
#include "tightsigma/sunflower.hpp"

namespace tightsigma {

// --- brackets -----------------------------------------------------------

Bracket bracket_of(Element a, const SubalgebraPartition& r) {
  r.ambient().require(a);
  std::uint64_t inside = 0;
  for (std::size_t i = 0; i < r.block_count(); ++i) {
    if (r.blocks()[i].subset_of(a)) {
      inside |= std::uint64_t{1} << i;
    }
  }
  if (r.block_count() > kMaxBracketBlocks) {
    throw Error(ErrorKind::size_bound, "bracket enumeration over " +
                                           std::to_string(r.block_count()) + " blocks");
  }
  const std::uint64_t meeting = r.blocks_meeting(a);
  const std::uint64_t all = r.block_count() == 64 ? ~std::uint64_t{0}
                                                  : (std::uint64_t{1} << r.block_count()) - 1;
  Bracket b{r, {}, {}};
  // Submasks of `inside`, and supermasks of `meeting` via submasks of its complement.
  for (std::uint64_t m = inside;; m = (m - 1) & inside) {
    b.lower_ideal.push_back(r.element_from_blocks(m));
    if (m == 0) {
      break;
    }
  }
  const std::uint64_t free = all & ~meeting;
  for (std::uint64_t m = free;; m = (m - 1) & free) {
    b.upper_filter.push_back(r.element_from_blocks(meeting | m));
    if (m == 0) {
      break;
    }
  }
  std::sort(b.lower_ideal.begin(), b.lower_ideal.end());
  std::sort(b.upper_filter.begin(), b.upper_filter.end());
  return b;
}

BracketCheck check_bracket(const Bracket& b) {
  BracketCheck out;
  const std::set<Element> lower(b.lower_ideal.begin(), b.lower_ideal.end());
  const std::set<Element> upper(b.upper_filter.begin(), b.upper_filter.end());
  const auto in_r = [&](Element e) { return b.r.contains(e); };
  const bool members_ok = std::all_of(lower.begin(), lower.end(), in_r) &&
                          std::all_of(upper.begin(), upper.end(), in_r);

  out.ideal = members_ok && !lower.empty();
  for (auto it = lower.begin(); out.ideal && it != lower.end(); ++it) {
    for (Element block : b.r.blocks()) {
      if (block.subset_of(*it) && !lower.count(*it - block)) {
        out.ideal = false;
      }
    }
    for (Element other : lower) {
      if (!lower.count(*it | other)) {
        out.ideal = false;
      }
    }
  }
  const Element top = b.r.ambient().top();
  out.filter = members_ok && !upper.empty();
  for (auto it = upper.begin(); out.filter && it != upper.end(); ++it) {
    for (Element block : b.r.blocks()) {
      if (!block.meets(*it) && !upper.count(*it | block)) {
        out.filter = false;
      }
    }
    for (Element other : upper) {
      if (!upper.count(*it & other)) {
        out.filter = false;
      }
    }
  }
  Element join_lower;
  for (Element e : lower) {
    join_lower |= e;
  }
  Element meet_upper = top;
  for (Element e : upper) {
    meet_upper &= e;
  }
  out.ordered = join_lower.subset_of(meet_upper);
  return out;
}

std::optional<GpWitness> gp_member(std::span<const Bracket> brackets, const BoolPoly& p) {
  if (brackets.size() != p.arity()) {
    throw Error(ErrorKind::arity_mismatch, "G_P membership needs " + std::to_string(p.arity()) +
                                               " brackets, got " +
                                               std::to_string(brackets.size()));
  }
  if (brackets.empty()) {
    return p.is_zero() ? std::optional<GpWitness>(GpWitness{}) : std::nullopt;
  }
  const SubalgebraPartition& r = brackets.front().r;
  GpWitness w;
  for (std::size_t i = 0; i < brackets.size(); ++i) {
    if (!(brackets[i].r == r)) {
      throw Error(ErrorKind::ambient_mismatch, "brackets are over different subalgebras");
    }
    if (!check_bracket(brackets[i]).ok()) {
      throw Error(ErrorKind::precondition, "bracket " + std::to_string(i + 1) +
                                               " is not an ideal-filter pair");
    }
    Element low;
    for (Element e : brackets[i].lower_ideal) {
      low |= e;
    }
    Element high = r.ambient().top();
    for (Element e : brackets[i].upper_filter) {
      high &= e;
    }
    w.lows.push_back(low);
    w.highs.push_back(high);
  }
  if (all_signs_vanish(p, w.lows, w.highs, r.ambient())) {
    return w;
  }
  return std::nullopt;
}

// --- dichotomy ----------------------------------------------------------

namespace {

class ZeroOracle {
public:
  ZeroOracle(const ElementFamily& family, const BoolPoly& p, const FiniteAlgebra& algebra)
      : family_(family), p_(p), algebra_(algebra), args_(p.arity()) {}

  /// Some choice a_i ∈ H_{t_i} has P(a) = 0.
  bool operator()(std::span<const std::size_t> tuple) {
    std::vector<std::size_t> key(tuple.begin(), tuple.end());
    if (auto it = cache_.find(key); it != cache_.end()) {
      return it->second;
    }
    const bool z = search(tuple, 0);
    cache_.emplace(std::move(key), z);
    return z;
  }

private:
  bool search(std::span<const std::size_t> tuple, std::size_t pos) {
    if (pos == tuple.size()) {
      return eval_poly(p_, args_, algebra_).empty();
    }
    for (Element a : family_[tuple[pos]]) {
      args_[pos] = a;
      if (search(tuple, pos + 1)) {
        return true;
      }
    }
    return false;
  }

  const ElementFamily& family_;
  const BoolPoly& p_;
  const FiniteAlgebra& algebra_;
  std::vector<Element> args_;
  std::map<std::vector<std::size_t>, bool> cache_;
};

/// Calls fn(tuple) for every tuple in [0,N)^n; stops when fn returns false.
template <typename Fn>
bool for_each_tuple(std::size_t base, std::size_t n, Fn&& fn) {
  std::vector<std::size_t> t(n, 0);
  if (base == 0) {
    return true;
  }
  for (;;) {
    if (!fn(std::span<const std::size_t>(t))) {
      return false;
    }
    std::size_t i = 0;
    while (i < n && ++t[i] == base) {
      t[i++] = 0;
    }
    if (i == n) {
      return true;
    }
  }
}

bool all_distinct(std::span<const std::size_t> t) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      if (t[i] == t[j]) {
        return false;
      }
    }
  }
  return true;
}

struct BudgetExhausted {};

/* Search for H_1..H_d of size m with every tuple in their product in the
 * relation. Relations are dense over [0,N)^d, position 1 least significant. */
class BoxSearch {
public:
  BoxSearch(std::size_t n_members, std::size_t m, bool disjoint, std::size_t budget)
      : n_(n_members), m_(m), disjoint_(disjoint), budget_(budget) {}

  bool solve(const std::vector<char>& rel, std::size_t d, std::uint64_t used,
             std::vector<std::vector<std::size_t>>& out) {
    tick();
    if (d == 1) {
      std::vector<std::size_t> pick;
      for (std::size_t j = 0; j < n_ && pick.size() < m_; ++j) {
        if (rel[j] && !(disjoint_ && ((used >> j) & 1u))) {
          pick.push_back(j);
        }
      }
      if (pick.size() < m_) {
        return false;
      }
      out.push_back(std::move(pick));
      return true;
    }
    std::vector<std::size_t> chosen;
    std::vector<char> rest(rel.size() / n_, 1);
    return choose(rel, d, used, 0, chosen, rest, out);
  }

private:
  void tick() {
    if (budget_ == 0) {
      throw BudgetExhausted{};
    }
    --budget_;
  }

  bool viable(const std::vector<char>& rest, std::size_t d, std::uint64_t used) const {
    // Every remaining position must still offer m usable members.
    for (std::size_t pos = 0; pos < d; ++pos) {
      std::uint64_t seen = 0;
      std::size_t stride = 1;
      for (std::size_t i = 0; i < pos; ++i) {
        stride *= n_;
      }
      for (std::size_t idx = 0; idx < rest.size(); ++idx) {
        if (rest[idx]) {
          seen |= std::uint64_t{1} << ((idx / stride) % n_);
        }
      }
      if (disjoint_) {
        seen &= ~used;
      }
      if (static_cast<std::size_t>(std::popcount(seen)) < m_) {
        return false;
      }
    }
    return true;
  }

  bool choose(const std::vector<char>& rel, std::size_t d, std::uint64_t used, std::size_t start,
              std::vector<std::size_t>& chosen, const std::vector<char>& rest,
              std::vector<std::vector<std::size_t>>& out) {
    tick();
    if (chosen.size() == m_) {
      std::uint64_t now_used = used;
      for (std::size_t c : chosen) {
        now_used |= std::uint64_t{1} << c;
      }
      const std::size_t mark = out.size();
      out.push_back(chosen);
      if (solve(rest, d - 1, now_used, out)) {
        return true;
      }
      out.resize(mark);
      return false;
    }
    for (std::size_t i = start; i + (m_ - chosen.size()) <= n_; ++i) {
      if (disjoint_ && ((used >> i) & 1u)) {
        continue;
      }
      std::vector<char> next(rest.size());
      bool any = false;
      for (std::size_t idx = 0; idx < rest.size(); ++idx) {
        next[idx] = rest[idx] && rel[i + n_ * idx];
        any = any || next[idx];
      }
      if (!any) {
        continue;
      }
      std::uint64_t now_used = used;
      for (std::size_t c : chosen) {
        now_used |= std::uint64_t{1} << c;
      }
      now_used |= std::uint64_t{1} << i;
      if (!viable(next, d - 1, now_used)) {
        continue;
      }
      chosen.push_back(i);
      if (choose(rel, d, used, i + 1, chosen, next, out)) {
        return true;
      }
      chosen.pop_back();
    }
    return false;
  }

  std::size_t n_;
  std::size_t m_;
  bool disjoint_;
  std::size_t budget_;
};

bool lexicographically_smaller(const std::vector<std::size_t>& a,
                               const std::vector<std::size_t>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<std::size_t> mask_indices(std::uint64_t mask) {
  std::vector<std::size_t> out;
  for (; mask != 0; mask &= mask - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
  }
  return out;
}

bool overlapping(const std::vector<std::vector<std::size_t>>& hs) {
  std::set<std::size_t> seen;
  for (const auto& h : hs) {
    for (std::size_t x : h) {
      if (!seen.insert(x).second) {
        return true;
      }
    }
  }
  return false;
}

/// Shared R from the saturation / Δ-system pipeline: saturate every member,
/// take a sunflower kernel of the supports, close it and use its skeleton.
std::optional<SubalgebraPartition> kernel_subalgebra(const Filtration& f,
                                                      const ElementFamily& family,
                                                      std::size_t threshold) {
  SetFamily supports;
  try {
    for (const auto& h : family) {
      supports.push_back(saturate(f, h).indices());
    }
  } catch (const Error&) {
    return std::nullopt;
  }
  IndexSet delta;
  const std::size_t k = std::clamp<std::size_t>(threshold, 2, std::max<std::size_t>(2, family.size()));
  if (family.size() >= 2) {
    const SunflowerOutcome sf = sunflower(supports, k);
    if (sf.found) {
      delta = IndexSet(sf.found->kernel);
    }
  }
  return skeleton(f, close_under_supports(f, delta));
}

} // namespace

bool validate_first(const ElementFamily& family, const BoolPoly& p, const FiniteAlgebra& algebra,
                    std::span<const std::size_t> h0) {
  ZeroOracle zero(family, p, algebra);
  std::vector<std::size_t> t(p.arity());
  return for_each_tuple(h0.size(), p.arity(), [&](std::span<const std::size_t> pos) {
    if (!all_distinct(pos)) {
      return true;
    }
    for (std::size_t i = 0; i < pos.size(); ++i) {
      t[i] = h0[pos[i]];
    }
    return !zero(t);
  });
}

bool validate_second(const ElementFamily& family, const BoolPoly& p,
                     const FiniteAlgebra& algebra,
                     const std::vector<std::vector<std::size_t>>& hs) {
  if (hs.size() != p.arity()) {
    return false;
  }
  ZeroOracle zero(family, p, algebra);
  std::vector<std::size_t> pos(hs.size(), 0);
  std::vector<std::size_t> t(hs.size());
  if (std::any_of(hs.begin(), hs.end(), [](const auto& h) { return h.empty(); })) {
    return true;
  }
  for (;;) {
    for (std::size_t i = 0; i < hs.size(); ++i) {
      t[i] = hs[i][pos[i]];
    }
    if (!zero(t)) {
      return false;
    }
    std::size_t i = 0;
    while (i < hs.size() && ++pos[i] == hs[i].size()) {
      pos[i++] = 0;
    }
    if (i == hs.size()) {
      return true;
    }
  }
}

DichotomyReport dichotomy_scan(const Filtration& f, const ElementFamily& family,
                               const BoolPoly& p, const DichotomyOptions& options) {
  const std::size_t n = p.arity();
  const std::size_t big_n = family.size();
  const std::size_t m = options.threshold;
  if (n == 0) {
    throw Error(ErrorKind::arity_mismatch, "dichotomy scan needs a polynomial of arity >= 1");
  }
  if (m == 0) {
    throw Error(ErrorKind::precondition, "threshold must be at least 1");
  }
  const FiniteAlgebra algebra = f.final_algebra();
  for (const auto& h : family) {
    for (Element a : h) {
      algebra.require(a);
    }
  }

  DichotomyReport report;
  ZeroOracle zero(family, p, algebra);

  std::size_t dense = 1;
  for (std::size_t i = 0; i < n && dense <= (std::size_t{1} << 22); ++i) {
    dense *= std::max<std::size_t>(big_n, 1);
  }
  report.exhaustive = big_n <= options.exhaustive_limit && big_n <= 63 &&
                      dense <= (std::size_t{1} << 22);
  bool second_done = false;

  if (report.exhaustive) {
    std::vector<char> rel(dense, 0);
    std::set<std::uint64_t> bad;
    std::size_t idx = 0;
    for_each_tuple(big_n, n, [&](std::span<const std::size_t> t) {
      rel[idx] = zero(t);
      if (rel[idx] && all_distinct(t)) {
        std::uint64_t mask = 0;
        for (std::size_t x : t) {
          mask |= std::uint64_t{1} << x;
        }
        bad.insert(mask);
      }
      ++idx;
      return true;
    });

    std::vector<std::size_t> best;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << big_n); ++mask) {
      const auto size = static_cast<std::size_t>(std::popcount(mask));
      if (size < best.size()) {
        continue;
      }
      const bool independent =
          std::none_of(bad.begin(), bad.end(), [mask](std::uint64_t b) { return (mask & b) == b; });
      if (!independent) {
        continue;
      }
      auto members = mask_indices(mask);
      if (size > best.size() || lexicographically_smaller(members, best)) {
        best = std::move(members);
      }
    }
    report.largest_first = best.size();
    if (best.size() >= m) {
      report.first = best;
    }

    try {
      for (bool disjoint : {true, false}) {
        BoxSearch search(big_n, m, disjoint, options.node_budget);
        std::vector<std::vector<std::size_t>> hs;
        if (search.solve(rel, n, 0, hs)) {
          report.second = std::move(hs);
          break;
        }
      }
      second_done = true;
    } catch (const BudgetExhausted&) {
      report.exhaustive = false;
    }
  } else {
    Rng rng(options.seed);
    std::vector<std::size_t> order(big_n);
    std::vector<std::size_t> best;
    std::vector<std::size_t> t(n);
    for (std::size_t round = 0; round < options.samples && big_n > 0; ++round) {
      for (std::size_t i = 0; i < big_n; ++i) {
        order[i] = i;
      }
      rng.shuffle(order);
      std::vector<std::size_t> picked;
      for (std::size_t x : order) {
        picked.push_back(x);
        // Only tuples through the new member can be new zeros.
        const bool clean = for_each_tuple(picked.size(), n, [&](std::span<const std::size_t> pos) {
          if (!all_distinct(pos) ||
              std::find(pos.begin(), pos.end(), picked.size() - 1) == pos.end()) {
            return true;
          }
          for (std::size_t i = 0; i < n; ++i) {
            t[i] = picked[pos[i]];
          }
          return !zero(t);
        });
        if (!clean) {
          picked.pop_back();
        }
      }
      std::sort(picked.begin(), picked.end());
      if (picked.size() > best.size() ||
          (picked.size() == best.size() && lexicographically_smaller(picked, best))) {
        best = std::move(picked);
      }
    }
    report.largest_first = best.size();
    if (best.size() >= m) {
      report.first = best;
    }
  }

  if (!second_done && big_n > 0) {
    Rng rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
    const auto kernel_r = kernel_subalgebra(f, family, m);
    std::vector<SubalgebraPartition> fixed;
    if (kernel_r) {
      fixed.push_back(*kernel_r);
    }
    fixed.push_back(SubalgebraPartition::trivial(algebra.atom_count()));

    std::vector<Element> a(n);
    std::vector<Element> lows(n);
    std::vector<Element> highs(n);
    const auto pick = [&]() -> std::optional<Element> {
      const auto& h = family[rng.below(big_n)];
      if (h.empty()) {
        return std::nullopt;
      }
      return h[rng.below(h.size())];
    };
    for (std::size_t round = 0; round < options.samples && !report.second; ++round) {
      bool complete = true;
      for (std::size_t i = 0; i < n && complete; ++i) {
        const auto e = pick();
        complete = e.has_value();
        a[i] = e.value_or(Element{});
      }
      const auto pivot = pick();
      if (!complete || !eval_poly(p, a, algebra).empty()) {
        continue;
      }
      std::vector<SubalgebraPartition> candidates = fixed;
      if (pivot) {
        candidates.push_back(generate(algebra, std::span(&*pivot, 1)));
      }
      for (const auto& r : candidates) {
        // The principal brackets of a lie in G_P(R) exactly when the box
        // between their extreme members vanishes at every corner.
        for (std::size_t i = 0; i < n; ++i) {
          lows[i] = lower_approx(r, a[i]);
          highs[i] = upper_approx(r, a[i]);
        }
        if (!all_signs_vanish(p, lows, highs, algebra)) {
          continue;
        }
        std::vector<std::vector<std::size_t>> hs(n);
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < big_n; ++j) {
            const bool hit = std::any_of(family[j].begin(), family[j].end(), [&](Element e) {
              return lows[i].subset_of(e) && e.subset_of(highs[i]);
            });
            if (hit) {
              hs[i].push_back(j);
            }
          }
        }
        if (std::all_of(hs.begin(), hs.end(), [m](const auto& h) { return h.size() >= m; })) {
          report.second = std::move(hs);
          report.shared_r = r;
          break;
        }
      }
    }
    if (!report.shared_r) {
      report.shared_r = kernel_r;
    }
  }

  if (report.second) {
    report.second_overlaps = overlapping(*report.second);
  }
  if (report.first && !validate_first(family, p, algebra, *report.first)) {
    throw std::logic_error("dichotomy_scan: alternative (1) witness failed re-validation");
  }
  if (report.second && !validate_second(family, p, algebra, *report.second)) {
    throw std::logic_error("dichotomy_scan: alternative (2) witness failed re-validation");
  }
  return report;
}

} // namespace tightsigma
