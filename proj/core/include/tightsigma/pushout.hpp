#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tightsigma/morphism.hpp"
#include "tightsigma/subalgebra.hpp"

namespace tightsigma {

/* A commutative square of inclusions R ⊆ A, S ⊆ top, all given as
 * subalgebras of one ambient algebra. For a diagram built from finite
 * algebras directly, `top` is the discrete partition. */
struct Diagram {
  SubalgebraPartition top;
  SubalgebraPartition a;
  SubalgebraPartition s;
  SubalgebraPartition r;
};

/* A span A ⊇ R ⊆ S of abstract finite algebras. R is presented twice, as a
 * partition of A's atoms and of S's atoms; matching[i] is the block of
 * r_in_s identified with block i of r_in_a. */
struct AmalgamInput {
  std::size_t a_atoms;
  std::size_t s_atoms;
  SubalgebraPartition r_in_a;
  SubalgebraPartition r_in_s;
  std::vector<std::size_t> matching;
};

/// Throws unless the input describes a valid span.
void validate(const AmalgamInput& input);

struct Amalgam {
  FiniteAlgebra algebra;
  /// Atom i of the push-out is the pair atom_pairs[i] = (a-atom, s-atom).
  std::vector<std::pair<std::size_t, std::size_t>> atom_pairs;
  Morphism embed_a;
  Morphism embed_s;

  /// The square as subalgebras of the push-out. Block i of `a` is the
  /// image of A's atom i only up to reordering; use embed_a for that.
  Diagram diagram(const AmalgamInput& input) const;
};

/// Free sum of A and S modulo the identification of R: atoms are the pairs
/// (α, σ) whose R-blocks are matched, in lexicographic order.
Amalgam amalgamate(const AmalgamInput& input);

/// Number of push-out atoms, Σ over R-blocks of |A-atoms| × |S-atoms|.
std::size_t amalgam_atom_count(const AmalgamInput& input);

enum class PushoutViolation {
  not_a_square,     // R ⊄ A, R ⊄ S, A ⊄ top or S ⊄ top
  not_generating,   // ⟨A ∪ S⟩ ≠ top
  wrong_intersection, // A ∩ S ≠ R
  not_commuting,
};

std::string to_string(PushoutViolation v);

struct PushoutReport {
  std::vector<PushoutViolation> violations;
  bool ok() const { return violations.empty(); }
};

PushoutReport verify_pushout(const Diagram& d);

struct MediatingResult {
  bool compatible = false;
  std::vector<Morphism> morphisms;
};

/* Every morphism h: top -> C with h∘ι_A = f and h∘ι_S = g. A morphism out of
 * a subalgebra is indexed by its blocks: f has d.a.block_count() source
 * atoms, g has d.s.block_count(), and h has d.top.block_count(). When f and
 * g disagree on R the result is flagged incompatible and empty. */
MediatingResult mediating_morphisms(const Diagram& d, std::size_t c_atoms, const Morphism& f,
                                    const Morphism& g);

} // namespace tightsigma
