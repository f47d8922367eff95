#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tightsigma/boolean.hpp"

namespace tightsigma {

/* A subalgebra of the powerset of {0..n-1}, given by the partition of the
 * atoms into its own atoms ("blocks"). Its elements are the unions of
 * blocks. Blocks are kept sorted by their least atom, so two partitions
 * describe the same subalgebra exactly when they compare equal. */
class SubalgebraPartition {
public:
  /// Throws unless `blocks` is a partition of {0..atom_count-1} into nonempty sets.
  SubalgebraPartition(std::size_t atom_count, std::vector<Element> blocks);

  static SubalgebraPartition trivial(std::size_t atom_count);
  static SubalgebraPartition discrete(std::size_t atom_count);
  static SubalgebraPartition from_blocks(std::size_t atom_count,
                                         const std::vector<std::vector<std::size_t>>& blocks);
  /// Blocks are the nonempty fibres of `label` (one label per atom).
  static SubalgebraPartition from_labels(std::span<const std::size_t> label);

  std::size_t atom_count() const { return atom_count_; }
  FiniteAlgebra ambient() const { return FiniteAlgebra(atom_count_); }
  const std::vector<Element>& blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }
  std::size_t block_of(std::size_t atom) const { return block_of_[atom]; }

  /// Union of the blocks selected by bit i of `mask`.
  Element element_from_blocks(std::uint64_t mask) const;
  /// Bit i is set iff block i meets e.
  std::uint64_t blocks_meeting(Element e) const;

  bool contains(Element e) const;
  /// Every element of the subalgebra (2^block_count of them).
  std::vector<Element> elements() const;

  /// True iff every element of *this is an element of `other`.
  bool is_subalgebra_of(const SubalgebraPartition& other) const;

  std::vector<std::vector<std::size_t>> block_lists() const;

  friend bool operator==(const SubalgebraPartition& a, const SubalgebraPartition& b) {
    return a.atom_count_ == b.atom_count_ && a.blocks_ == b.blocks_;
  }

private:
  std::size_t atom_count_;
  std::vector<Element> blocks_;
  std::vector<std::size_t> block_of_;
};

/// ⟨gens⟩: blocks are the nonempty sign-pattern intersections of the generators.
SubalgebraPartition generate(const FiniteAlgebra& algebra, std::span<const Element> gens);

/// ⟨S1 ∪ S2⟩, the common refinement of the two partitions.
SubalgebraPartition join(const SubalgebraPartition& s1, const SubalgebraPartition& s2);

/// S1 ∩ S2 as element sets: the finest common coarsening of the partitions.
SubalgebraPartition intersect(const SubalgebraPartition& s1, const SubalgebraPartition& s2);

/// Least element of R above a (union of the blocks meeting a).
Element upper_approx(const SubalgebraPartition& r, Element a);
/// Greatest element of R below a (union of the blocks inside a).
Element lower_approx(const SubalgebraPartition& r, Element a);

/// Least r ∈ R with c1 ≤ r ≤ c2, if any. Requires c1 ≤ c2.
std::optional<Element> interpolate(const SubalgebraPartition& r, Element c1, Element c2);

/* Whether S1 and S2 commute. Uses the block form of the criterion: inside
 * every block of S1 ∩ S2, each block of S1 must meet each block of S2.
 * This is equivalent to both the disjoint-separation and the interpolation
 * characterizations and runs in time linear in the atom count. */
bool commute(const SubalgebraPartition& s1, const SubalgebraPartition& s2);

} // namespace tightsigma
