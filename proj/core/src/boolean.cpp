#include "tightsigma/boolean.hpp"

namespace tightsigma {

Element Element::of(std::initializer_list<std::size_t> atoms) {
  return of(std::span<const std::size_t>(atoms.begin(), atoms.size()));
}

Element Element::of(std::span<const std::size_t> atoms) {
  std::uint64_t bits = 0;
  for (std::size_t a : atoms) {
    if (a >= kMaxRepresentableAtoms) {
      throw Error(ErrorKind::foreign_element,
                  "atom index " + std::to_string(a) + " exceeds the representable range");
    }
    bits |= std::uint64_t{1} << a;
  }
  return Element(bits);
}

std::vector<std::size_t> Element::atoms() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
  }
  return out;
}

std::string to_string(Element e) {
  std::string s = "{";
  bool first = true;
  for (std::size_t a : e.atoms()) {
    if (!first) {
      s += ',';
    }
    s += std::to_string(a);
    first = false;
  }
  s += '}';
  return s;
}

FiniteAlgebra::FiniteAlgebra(std::size_t atom_count) : atom_count_(atom_count) {
  if (atom_count == 0 || atom_count > kMaxRepresentableAtoms) {
    throw Error(ErrorKind::precondition,
                "atom count must lie in [1, " + std::to_string(kMaxRepresentableAtoms) +
                    "], got " + std::to_string(atom_count));
  }
}

void FiniteAlgebra::require(Element e) const {
  if (!contains(e)) {
    throw Error(ErrorKind::foreign_element, "element " + to_string(e) + " is not in the " +
                                                std::to_string(atom_count_) + "-atom algebra");
  }
}

std::vector<Element> FiniteAlgebra::elements() const {
  if (atom_count_ > 30) {
    throw Error(ErrorKind::size_bound, "refusing to enumerate more than 2^30 elements");
  }
  std::vector<Element> out;
  out.reserve(element_count());
  for (std::uint64_t b = 0; b < element_count(); ++b) {
    out.push_back(Element::from_bits(b));
  }
  return out;
}

bool leq(const FiniteAlgebra& algebra, Element a, Element b) {
  algebra.require(a);
  algebra.require(b);
  return a.subset_of(b);
}

} // namespace tightsigma
