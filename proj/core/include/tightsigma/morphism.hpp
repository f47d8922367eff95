#pragma once

#include <cstddef>
#include <vector>

#include "tightsigma/boolean.hpp"

namespace tightsigma {

/* A Boolean morphism h: X -> Y between finite algebras, stored through its
 * dual Stone map atoms(Y) -> atoms(X): dual[y] is the unique atom x of X
 * with y ≤ h(x). Every such map is a morphism and every morphism has one. */
class Morphism {
public:
  Morphism(std::size_t source_atoms, std::vector<std::size_t> dual);

  static Morphism identity(std::size_t atoms);

  std::size_t source_atoms() const { return source_atoms_; }
  std::size_t target_atoms() const { return dual_.size(); }
  const std::vector<std::size_t>& dual() const { return dual_; }

  /// h(e) = the set of target atoms whose dual lies in e.
  Element apply(Element e) const;
  /// Injective iff the dual map is onto.
  bool is_injective() const;
  /// this: X -> Y followed by next: Y -> Z.
  Morphism then(const Morphism& next) const;

  friend bool operator==(const Morphism&, const Morphism&) = default;

private:
  std::size_t source_atoms_;
  std::vector<std::size_t> dual_;
};

/// All morphisms from the algebra with `source_atoms` atoms to the one with
/// `target_atoms` atoms, in lexicographic order of their dual maps.
std::vector<Morphism> all_morphisms(std::size_t source_atoms, std::size_t target_atoms);

} // namespace tightsigma
