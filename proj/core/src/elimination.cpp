#include "tightsigma/elimination.hpp"

#include <string>
#include <vector>

namespace tightsigma {

Elimination eliminate(const BoolPoly& p, std::size_t var) {
  if (var >= p.arity()) {
    throw Error(ErrorKind::arity_mismatch, "cannot eliminate x" + std::to_string(var + 1) +
                                               " from a polynomial of arity " +
                                               std::to_string(p.arity()));
  }
  return {p.cofactor(var, false), !p.cofactor(var, true)};
}

bool all_signs_vanish(const BoolPoly& p, std::span<const Element> lows,
                      std::span<const Element> highs, const FiniteAlgebra& algebra) {
  if (lows.size() != p.arity() || highs.size() != p.arity()) {
    throw Error(ErrorKind::arity_mismatch, "sign box has " + std::to_string(lows.size()) + "/" +
                                               std::to_string(highs.size()) +
                                               " coordinates for arity " +
                                               std::to_string(p.arity()));
  }
  for (std::size_t i = 0; i < lows.size(); ++i) {
    algebra.require(lows[i]);
    algebra.require(highs[i]);
    if (!lows[i].subset_of(highs[i])) {
      throw Error(ErrorKind::precondition, "sandwich violated at coordinate " +
                                               std::to_string(i + 1) + ": " +
                                               to_string(lows[i]) + " is not below " +
                                               to_string(highs[i]));
    }
  }
  std::vector<Element> corner(p.arity());
  for (std::uint64_t signs = 0; signs < p.rows(); ++signs) {
    for (std::size_t i = 0; i < corner.size(); ++i) {
      corner[i] = (signs >> i) & 1u ? highs[i] : lows[i];
    }
    if (!eval_poly(p, corner, algebra).empty()) {
      return false;
    }
  }
  return true;
}

} // namespace tightsigma
