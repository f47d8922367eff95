#include "tightsigma/morphism.hpp"

#include <string>

namespace tightsigma {

Morphism::Morphism(std::size_t source_atoms, std::vector<std::size_t> dual)
    : source_atoms_(source_atoms), dual_(std::move(dual)) {
  if (source_atoms == 0 || source_atoms > kMaxRepresentableAtoms || dual_.empty() ||
      dual_.size() > kMaxRepresentableAtoms) {
    throw Error(ErrorKind::precondition, "morphism between unsupported algebra sizes");
  }
  for (std::size_t y = 0; y < dual_.size(); ++y) {
    if (dual_[y] >= source_atoms) {
      throw Error(ErrorKind::foreign_element, "dual map sends atom " + std::to_string(y) +
                                                  " to " + std::to_string(dual_[y]) +
                                                  ", outside " + std::to_string(source_atoms) +
                                                  " source atoms");
    }
  }
}

Morphism Morphism::identity(std::size_t atoms) {
  std::vector<std::size_t> dual(atoms);
  for (std::size_t i = 0; i < atoms; ++i) {
    dual[i] = i;
  }
  return Morphism(atoms, std::move(dual));
}

Element Morphism::apply(Element e) const {
  FiniteAlgebra(source_atoms_).require(e);
  std::uint64_t out = 0;
  for (std::size_t y = 0; y < dual_.size(); ++y) {
    if (e.contains(dual_[y])) {
      out |= std::uint64_t{1} << y;
    }
  }
  return Element::from_bits(out);
}

bool Morphism::is_injective() const {
  std::uint64_t hit = 0;
  for (std::size_t x : dual_) {
    hit |= std::uint64_t{1} << x;
  }
  return hit == FiniteAlgebra(source_atoms_).top().bits();
}

Morphism Morphism::then(const Morphism& next) const {
  if (next.source_atoms_ != target_atoms()) {
    throw Error(ErrorKind::ambient_mismatch, "cannot compose: codomain has " +
                                                 std::to_string(target_atoms()) +
                                                 " atoms, next domain has " +
                                                 std::to_string(next.source_atoms_));
  }
  std::vector<std::size_t> dual(next.dual_.size());
  for (std::size_t z = 0; z < dual.size(); ++z) {
    dual[z] = dual_[next.dual_[z]];
  }
  return Morphism(source_atoms_, std::move(dual));
}

std::vector<Morphism> all_morphisms(std::size_t source_atoms, std::size_t target_atoms) {
  std::vector<Morphism> out;
  std::vector<std::size_t> dual(target_atoms, 0);
  for (;;) {
    out.emplace_back(source_atoms, dual);
    std::size_t i = target_atoms;
    while (i > 0) {
      --i;
      if (++dual[i] < source_atoms) {
        break;
      }
      dual[i] = 0;
      if (i == 0) {
        return out;
      }
    }
    if (target_atoms == 0) {
      return out;
    }
  }
}

} // namespace tightsigma
