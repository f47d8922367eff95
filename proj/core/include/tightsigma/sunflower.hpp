#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace tightsigma {

using FiniteSet = std::vector<std::size_t>;
using SetFamily = std::vector<FiniteSet>;

struct Sunflower {
  FiniteSet kernel;
  /// Indices into the input family, increasing.
  std::vector<std::size_t> members;
};

struct SunflowerOutcome {
  std::optional<Sunflower> found;
  /// Every k-subfamily was examined (only set when the greedy search failed).
  bool exhaustive = false;
  /// The family is s-uniform and larger than s!(k-1)^s.
  bool bound_applies = false;
};

/// s!(k-1)^s, saturating at SIZE_MAX.
std::size_t sunflower_bound(std::size_t s, std::size_t k);

/* Looks for k members whose pairwise intersections all equal one kernel.
 *
 * First runs the Erdős–Rado recursion: a greedy maximal family of disjoint
 * sets, and when that is too small, recursion into the link of the element
 * of their union lying in the most sets. This always succeeds above the
 * bound. When it fails, families of at most `exhaustive_limit` distinct
 * sets are searched exhaustively. Members are normalized (sorted,
 * deduplicated); duplicate members are ignored after their first
 * occurrence. Requires k >= 2. */
SunflowerOutcome sunflower(const SetFamily& family, std::size_t k,
                           std::size_t exhaustive_limit = 24);

/// Direct check of the sunflower property for the given members.
bool is_sunflower(const SetFamily& family, const Sunflower& candidate);

} // namespace tightsigma
