#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tightsigma/filtration.hpp"

namespace tightsigma {

/// An ideal–filter pair (I⁻, I⁺) of a subalgebra R with I⁻ ≤ I⁺. Both sets
/// are stored sorted.
struct Bracket {
  SubalgebraPartition r;
  std::vector<Element> lower_ideal;
  std::vector<Element> upper_filter;
};

/// Brackets list their members, so R may have at most this many blocks.
inline constexpr std::size_t kMaxBracketBlocks = 20;

/// I⁻(a) = {r ∈ R : r ≤ a}, I⁺(a) = {r ∈ R : r ≥ a}.
Bracket bracket_of(Element a, const SubalgebraPartition& r);

struct BracketCheck {
  bool ideal = false;   // nonempty, downward closed in R, closed under joins
  bool filter = false;  // nonempty, upward closed in R, closed under meets
  bool ordered = false; // every member of I⁻ lies below every member of I⁺
  bool ok() const { return ideal && filter && ordered; }
};

BracketCheck check_bracket(const Bracket& b);

struct GpWitness {
  std::vector<Element> lows;
  std::vector<Element> highs;
};

/* Membership of (b_1, ..., b_n) in G_P(R): picks r_i^- ∈ I_i^- and
 * r_i^+ ∈ I_i^+ with P vanishing at every corner. The largest member of each
 * ideal and the smallest of each filter are tried first; they decide the
 * question, since a box whose corners all vanish vanishes on each sub-box
 * and every other candidate box contains this one. */
std::optional<GpWitness> gp_member(std::span<const Bracket> brackets, const BoolPoly& p);

// --- dichotomy scanner --------------------------------------------------

using ElementFamily = std::vector<std::vector<Element>>;

struct DichotomyOptions {
  std::size_t threshold = 2;
  std::uint64_t seed = 0;
  /// Families up to this size are scanned exhaustively.
  std::size_t exhaustive_limit = 12;
  /// Upper bound on search nodes in exhaustive mode before falling back.
  std::size_t node_budget = 5'000'000;
  /// Random rounds in sampling mode.
  std::size_t samples = 2000;
};

struct DichotomyReport {
  bool exhaustive = false;
  /// Alternative (1): member indices H₀ with P ≠ 0 on all transversals of
  /// distinct members.
  std::optional<std::vector<std::size_t>> first;
  /// Size of the largest such H₀ encountered (whether or not ≥ threshold).
  std::size_t largest_first = 0;
  /// Alternative (2): families H_1..H_n on which every transversal admits
  /// a zero of P.
  std::optional<std::vector<std::vector<std::size_t>>> second;
  /// Whether the reported H_i share members.
  bool second_overlaps = false;
  /// Sampling mode only: the shared R whose brackets produced alternative
  /// (2), or else the kernel skeleton that was tried.
  std::optional<SubalgebraPartition> shared_r;
};

/* Desk-scale scanner for the two alternatives of the symmetry dichotomy
 * over a family of element sets. Neither alternative need hold for finite
 * families, so this reports what it finds and makes no claim either way.
 * Exhaustive for small families; otherwise seeded sampling, where
 * alternative (2) is sought through shared-R brackets: a zero (a_1..a_n)
 * whose brackets lie in G_P(R) yields boxes r_i^- ≤ a_i ≤ r_i^+, and the
 * members with an element in the i-th box form H_i. R ranges over the
 * skeleton of a sunflower kernel of the members' saturated supports, the
 * trivial subalgebra, and subalgebras generated by one sampled member
 * element. Witnesses are re-validated by brute force before the report is
 * returned. */
DichotomyReport dichotomy_scan(const Filtration& f, const ElementFamily& family,
                               const BoolPoly& p, const DichotomyOptions& options);

/// Brute-force checks of the two alternatives.
bool validate_first(const ElementFamily& family, const BoolPoly& p, const FiniteAlgebra& algebra,
                    std::span<const std::size_t> h0);
bool validate_second(const ElementFamily& family, const BoolPoly& p,
                     const FiniteAlgebra& algebra,
                     const std::vector<std::vector<std::size_t>>& hs);

} // namespace tightsigma
