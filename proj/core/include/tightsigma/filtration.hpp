#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tightsigma/elimination.hpp"
#include "tightsigma/pushout.hpp"

namespace tightsigma {

/// A finite set of filtration step indices, kept sorted and duplicate-free.
class IndexSet {
public:
  IndexSet() = default;
  IndexSet(std::initializer_list<std::size_t> indices);
  explicit IndexSet(std::vector<std::size_t> indices);

  static IndexSet range(std::size_t end); // {0, ..., end-1}

  const std::vector<std::size_t>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  bool contains(std::size_t i) const;
  void insert(std::size_t i);

  /// Γ ∩ {0, ..., end-1}.
  IndexSet below(std::size_t end) const;
  IndexSet operator|(const IndexSet& o) const;
  IndexSet operator&(const IndexSet& o) const;
  bool subset_of(const IndexSet& o) const;

  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

private:
  std::vector<std::size_t> indices_;
};

std::string to_string(const IndexSet& s);

/* One successor step B_α -> B_{α+1}. R_α is a partition of B_α's atoms,
 * S_α a partition of B_{α+1}'s atoms. Steps produced by amalgamation keep
 * their input in `origin`. */
struct FiltrationStep {
  Morphism embedding;
  SubalgebraPartition r;
  SubalgebraPartition s;
  std::optional<AmalgamInput> origin;
};

/* A finite chain B_0 ⊆ B_1 ⊆ ... ⊆ B_m. The final algebra B_m plays the role
 * of the whole algebra; every S_α and R_α is also kept pushed forward into
 * it. Each step records a support Δ_α ⊆ {0..α-1} with R_α ⊆ E(Δ_α). */
class Filtration {
public:
  explicit Filtration(std::size_t base_atoms = 1);

  /// Appends an arbitrary step; the embedding must start at the current
  /// final algebra. Without a support, a minimal one is computed.
  void push_step(FiltrationStep step, std::optional<IndexSet> support = std::nullopt);
  /// Amalgamates `input` (whose A must be the current final algebra) and
  /// appends the resulting push-out step.
  void push_amalgam(const AmalgamInput& input, std::optional<IndexSet> support = std::nullopt);

  std::size_t length() const { return steps_.size(); }
  std::size_t base_atoms() const { return base_atoms_; }
  std::size_t atoms_at(std::size_t stage) const;
  std::size_t final_atoms() const { return atoms_at(length()); }
  FiniteAlgebra final_algebra() const { return FiniteAlgebra(final_atoms()); }

  const std::vector<FiltrationStep>& steps() const { return steps_; }
  const IndexSet& support(std::size_t step) const { return supports_[step]; }
  /// Composite embedding B_stage -> B_m.
  const Morphism& to_final(std::size_t stage) const { return to_final_[stage]; }

  /// B_stage, R_i and S_i as subalgebras of the final algebra.
  SubalgebraPartition stage_in_final(std::size_t stage) const;
  const SubalgebraPartition& r_in_final(std::size_t step) const { return r_final_[step]; }
  const SubalgebraPartition& s_in_final(std::size_t step) const { return s_final_[step]; }

private:
  std::size_t base_atoms_;
  std::vector<FiltrationStep> steps_;
  std::vector<IndexSet> supports_;
  std::vector<Morphism> to_final_;
  std::vector<SubalgebraPartition> r_final_;
  std::vector<SubalgebraPartition> s_final_;
};

/// The partition of the target's atoms induced by pulling `p` back along
/// the dual map of `h`; i.e. the image of the subalgebra p under h.
SubalgebraPartition push_forward(const SubalgebraPartition& p, const Morphism& h);

// --- construction -------------------------------------------------------

struct StepRejection {
  std::size_t step;
  std::size_t atoms;
};

struct BuildResult {
  Filtration filtration;
  std::vector<StepRejection> rejected;
};

/// Free algebra on `length` generators: R_α trivial, S_α with 2 atoms.
Filtration build_free_filtration(std::size_t length);

/// Applies the schedule in order. A step whose push-out would exceed
/// `max_atoms` is rejected, reported, and ends the build.
BuildResult build_filtration(std::span<const AmalgamInput> schedule,
                             std::size_t max_atoms = kDefaultMaxAtoms);

struct RandomFiltrationOptions {
  std::size_t length = 4;
  std::size_t max_s_atoms = 3;
  std::size_t max_atoms = kDefaultMaxAtoms;
  std::size_t attempts_per_step = 8;
  std::uint64_t seed = 0;
};

/* Seeded random filtration. At each step a support Δ is drawn, R_α is a
 * random coarsening of E(Δ) inside B_α and S_α a random extension of R_α.
 * Draws that overflow max_atoms are rejected and redrawn; after
 * attempts_per_step failures the step copies R_α (S_α = R_α). */
BuildResult build_random_filtration(const RandomFiltrationOptions& options);

// --- verification -------------------------------------------------------

enum class FiltrationViolationKind {
  base_not_two_element,
  embedding_not_injective,
  r_not_in_s,
  not_pushout,
  support_invalid,
};

std::string to_string(FiltrationViolationKind k);

struct FiltrationViolation {
  std::optional<std::size_t> step;
  FiltrationViolationKind kind;
  std::string detail;
};

struct FiltrationReport {
  std::vector<FiltrationViolation> violations;
  bool ok() const { return violations.empty(); }
};

FiltrationReport verify_filtration(const Filtration& f);

// --- skeletons ----------------------------------------------------------

/// E(Γ) = ⟨S_i : i ∈ Γ⟩ inside the final algebra.
SubalgebraPartition skeleton(const Filtration& f, const IndexSet& gamma);

/// R_γ ⊆ E(Γ ∩ γ) for every γ ∈ Γ.
bool is_saturated(const Filtration& f, const IndexSet& gamma);

/// Smallest superset of Γ closed under adding the recorded supports Δ_γ.
/// Closed sets are saturated, and intersections of closed sets are closed.
IndexSet close_under_supports(const Filtration& f, const IndexSet& gamma);

/// A minimal Γ with e ∈ E(Γ), found by dropping indices from the top down.
IndexSet element_support(const Filtration& f, Element e);

/// Saturated Γ_H with H ⊆ E(Γ_H): the union of element supports, closed
/// under the recorded step supports.
IndexSet saturate(const Filtration& f, std::span<const Element> h);

struct SkeletonPushoutResult {
  bool gamma1_saturated = false;
  bool gamma2_saturated = false;
  bool intersection_saturated = false;
  PushoutReport pushout;

  bool preconditions_hold() const {
    return gamma1_saturated && gamma2_saturated && intersection_saturated;
  }
  bool ok() const { return preconditions_hold() && pushout.ok(); }
};

/// Checks that E(Γ1∩Γ2) -> E(Γ1), E(Γ2) -> E(Γ1∪Γ2) is a push-out square.
/// The square is only checked when all three index sets are saturated.
SkeletonPushoutResult check_skeleton_pushout(const Filtration& f, const IndexSet& gamma1,
                                             const IndexSet& gamma2);

// --- bracket solving ----------------------------------------------------

struct BracketProblem {
  IndexSet delta;
  std::vector<IndexSet> gammas;
  std::vector<Element> elements;
  BoolPoly poly;
};

struct BracketSolution {
  std::vector<Element> lows;
  std::vector<Element> highs;
};

struct BracketResult {
  /// Human-readable precondition failures; empty when the problem is valid.
  std::vector<std::string> violations;
  std::optional<BracketSolution> solution;
};

/* For a_i ∈ E(Γ_i) with P(a) = 0, where Δ and every Γ_i are saturated and
 * Γ_i ∩ Γ_j = Δ, finds r_i^- ≤ a_i ≤ r_i^+ in E(Δ) such that P vanishes at
 * every corner of the box. Coordinates are fixed one at a time: the
 * eliminated bounds over all earlier sign choices are pushed into E(Δ) by
 * the canonical approximations. The solution is re-checked before it is
 * returned. */
BracketResult bracket_solve(const Filtration& f, const BracketProblem& problem);

} // namespace tightsigma
