#include "tightsigma/poly.hpp"

#include <algorithm>
#include <string>

namespace tightsigma {

namespace {

std::size_t words_for(std::size_t arity) {
  return arity <= 6 ? 1 : (std::size_t{1} << (arity - 6));
}

void require_arity(std::size_t arity) {
  if (arity > kMaxArity) {
    throw Error(ErrorKind::size_bound, "arity " + std::to_string(arity) +
                                           " exceeds the supported maximum " +
                                           std::to_string(kMaxArity));
  }
}

} // namespace

BoolPoly BoolPoly::constant(std::size_t arity, bool value) {
  require_arity(arity);
  BoolPoly p(arity, std::vector<std::uint64_t>(words_for(arity), value ? ~std::uint64_t{0} : 0));
  p.clear_padding();
  return p;
}

BoolPoly BoolPoly::variable(std::size_t arity, std::size_t var) {
  if (var >= arity) {
    throw Error(ErrorKind::arity_mismatch, "variable x" + std::to_string(var + 1) +
                                               " does not exist in arity " +
                                               std::to_string(arity));
  }
  return from_function(arity, [var](std::uint64_t m) { return (m >> var) & 1u; });
}

BoolPoly BoolPoly::from_bits(std::size_t arity, std::uint64_t rows) {
  if (arity > 6) {
    throw Error(ErrorKind::precondition, "from_bits supports arity at most 6");
  }
  BoolPoly p(arity, {rows});
  p.clear_padding();
  return p;
}

void BoolPoly::set(std::uint64_t row, bool value) {
  const std::uint64_t bit = std::uint64_t{1} << (row & 63);
  if (value) {
    table_[row >> 6] |= bit;
  } else {
    table_[row >> 6] &= ~bit;
  }
}

void BoolPoly::clear_padding() {
  if (arity_ < 6) {
    table_[0] &= (std::uint64_t{1} << rows()) - 1;
  }
}

bool BoolPoly::is_zero() const {
  return std::all_of(table_.begin(), table_.end(), [](std::uint64_t w) { return w == 0; });
}

bool BoolPoly::is_one() const { return (!*this).is_zero(); }

BoolPoly BoolPoly::cofactor(std::size_t var, bool value) const {
  if (var >= arity_) {
    throw Error(ErrorKind::arity_mismatch, "cofactor variable x" + std::to_string(var + 1) +
                                               " out of range for arity " +
                                               std::to_string(arity_));
  }
  const std::uint64_t low = (std::uint64_t{1} << var) - 1;
  return from_function(arity_ - 1, [&](std::uint64_t m) {
    const std::uint64_t full = (m & low) | ((m & ~low) << 1) | (std::uint64_t{value} << var);
    return at(full);
  });
}

BoolPoly BoolPoly::operator!() const {
  BoolPoly p = *this;
  for (auto& w : p.table_) {
    w = ~w;
  }
  p.clear_padding();
  return p;
}

void BoolPoly::require_same_arity(const BoolPoly& o) const {
  if (arity_ != o.arity_) {
    throw Error(ErrorKind::arity_mismatch, "polynomial arities differ: " +
                                               std::to_string(arity_) + " vs " +
                                               std::to_string(o.arity_));
  }
}

BoolPoly BoolPoly::operator&(const BoolPoly& o) const {
  require_same_arity(o);
  BoolPoly p = *this;
  for (std::size_t i = 0; i < p.table_.size(); ++i) {
    p.table_[i] &= o.table_[i];
  }
  return p;
}

BoolPoly BoolPoly::operator|(const BoolPoly& o) const {
  require_same_arity(o);
  BoolPoly p = *this;
  for (std::size_t i = 0; i < p.table_.size(); ++i) {
    p.table_[i] |= o.table_[i];
  }
  return p;
}

BoolPoly BoolPoly::operator^(const BoolPoly& o) const {
  require_same_arity(o);
  BoolPoly p = *this;
  for (std::size_t i = 0; i < p.table_.size(); ++i) {
    p.table_[i] ^= o.table_[i];
  }
  return p;
}

Element eval_poly(const BoolPoly& p, std::span<const Element> args, const FiniteAlgebra& algebra) {
  if (args.size() != p.arity()) {
    throw Error(ErrorKind::arity_mismatch, "polynomial of arity " + std::to_string(p.arity()) +
                                               " applied to " + std::to_string(args.size()) +
                                               " arguments");
  }
  for (Element a : args) {
    algebra.require(a);
  }
  // An atom lies below P(args) iff the row it selects is a 1-row.
  std::uint64_t out = 0;
  for (std::size_t atom = 0; atom < algebra.atom_count(); ++atom) {
    std::uint64_t row = 0;
    for (std::size_t i = 0; i < args.size(); ++i) {
      row |= std::uint64_t{args[i].contains(atom)} << i;
    }
    if (p.at(row)) {
      out |= std::uint64_t{1} << atom;
    }
  }
  return Element::from_bits(out);
}

bool polys_equal(const BoolPoly& p, const BoolPoly& q) {
  if (p.arity() != q.arity()) {
    throw Error(ErrorKind::arity_mismatch, "cannot compare polynomials of arity " +
                                               std::to_string(p.arity()) + " and " +
                                               std::to_string(q.arity()));
  }
  return p == q;
}

} // namespace tightsigma
