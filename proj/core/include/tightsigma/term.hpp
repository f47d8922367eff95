#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tightsigma/poly.hpp"

namespace tightsigma {

/* Term syntax (whitespace-insensitive):
 *
 *   expr   := xor ('|' xor)*
 *   xor    := and ('^' and)*
 *   and    := unary (('&' | '\') unary)*
 *   unary  := '!' unary | '(' expr ')' | 'x' N | '0' | '1'
 *
 * `a \ b` is the difference a & !b. Variables are x1, x2, ... (1-based).
 * Without an explicit arity the highest variable index decides it. */
BoolPoly parse_term(std::string_view text, std::optional<std::size_t> arity = std::nullopt);

/// Blake canonical form: the disjunction of all prime implicants, shortest
/// first. Constants print as "0" and "1". `names` defaults to x1..xn.
std::string format_dnf(const BoolPoly& p, const std::vector<std::string>& names = {});

/// Prime implicants as literal lists (var, polarity), in the order
/// format_dnf prints them.
struct Literal {
  std::size_t var;
  bool positive;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};
std::vector<std::vector<Literal>> prime_implicants(const BoolPoly& p);

} // namespace tightsigma
