#pragma once

#include <cstddef>
#include <span>

#include "tightsigma/poly.hpp"

namespace tightsigma {

/// Interval form of P = 0 in one variable: P(x) = 0 iff lower ≤ x_k ≤ upper,
/// where lower and upper are polynomials in the remaining variables.
struct Elimination {
  BoolPoly lower;
  BoolPoly upper;
};

/* Boole–Shannon cofactors: lower = P[x_k := 0], upper = ¬P[x_k := 1].
 * `var` is 0-based. The returned polynomials have arity - 1 and keep the
 * other variables in their original order. */
Elimination eliminate(const BoolPoly& p, std::size_t var);

/* Whether P vanishes at every corner of the box [lows, highs], i.e. on all
 * 2^n substitutions choosing lows_i or highs_i per coordinate. Requires
 * lows_i ≤ highs_i. */
bool all_signs_vanish(const BoolPoly& p, std::span<const Element> lows,
                      std::span<const Element> highs, const FiniteAlgebra& algebra);

} // namespace tightsigma
