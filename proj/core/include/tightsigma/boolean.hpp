#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "tightsigma/error.hpp"

namespace tightsigma {

/// Hard ceiling of the atom-set representation (one machine word).
inline constexpr std::size_t kMaxRepresentableAtoms = 64;

/// Default desk-scale bound on atom counts; builders and the CLI enforce it.
inline constexpr std::size_t kDefaultMaxAtoms = 24;

/* An element of a finite Boolean algebra, stored as the set of atoms below
 * it. Meet, join and difference need no ambient algebra; complement does,
 * see FiniteAlgebra::complement. */
class Element {
public:
  constexpr Element() = default;

  static constexpr Element from_bits(std::uint64_t bits) { return Element(bits); }
  static Element of(std::initializer_list<std::size_t> atoms);
  static Element of(std::span<const std::size_t> atoms);
  static constexpr Element atom(std::size_t i) { return Element(std::uint64_t{1} << i); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(std::size_t atom) const { return (bits_ >> atom) & 1u; }
  constexpr std::size_t count() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool subset_of(Element other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool meets(Element other) const { return (bits_ & other.bits_) != 0; }

  /// Atom indices in increasing order.
  std::vector<std::size_t> atoms() const;

  constexpr Element operator&(Element o) const { return Element(bits_ & o.bits_); }
  constexpr Element operator|(Element o) const { return Element(bits_ | o.bits_); }
  constexpr Element operator^(Element o) const { return Element(bits_ ^ o.bits_); }
  /// Set difference a ∧ ¬b.
  constexpr Element operator-(Element o) const { return Element(bits_ & ~o.bits_); }
  constexpr Element& operator&=(Element o) { bits_ &= o.bits_; return *this; }
  constexpr Element& operator|=(Element o) { bits_ |= o.bits_; return *this; }

  constexpr auto operator<=>(const Element&) const = default;

private:
  constexpr explicit Element(std::uint64_t bits) : bits_(bits) {}

  std::uint64_t bits_ = 0;
};

std::string to_string(Element e);

/// The powerset algebra of {0, ..., atom_count - 1}.
class FiniteAlgebra {
public:
  explicit FiniteAlgebra(std::size_t atom_count);

  std::size_t atom_count() const { return atom_count_; }
  /// 2^atom_count; only meaningful below 64 atoms.
  std::uint64_t element_count() const { return std::uint64_t{1} << atom_count_; }

  Element bottom() const { return Element{}; }
  Element top() const { return Element::from_bits(mask()); }
  Element complement(Element e) const { return Element::from_bits(~e.bits() & mask()); }

  bool contains(Element e) const { return (e.bits() & ~mask()) == 0; }
  /// Throws ForeignElement unless e belongs to this algebra.
  void require(Element e) const;

  /// Every element, in increasing bit order. Desk scale only.
  std::vector<Element> elements() const;

  friend bool operator==(const FiniteAlgebra&, const FiniteAlgebra&) = default;

private:
  std::uint64_t mask() const {
    return atom_count_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << atom_count_) - 1;
  }

  std::size_t atom_count_;
};

/// a ≤ b, i.e. a ∧ ¬b = 0. Both must belong to `algebra`.
bool leq(const FiniteAlgebra& algebra, Element a, Element b);

} // namespace tightsigma
