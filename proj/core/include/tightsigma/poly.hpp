#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tightsigma/boolean.hpp"

namespace tightsigma {

inline constexpr std::size_t kMaxArity = 12;

/* A Boolean polynomial in `arity` variables, held canonically as its truth
 * table. Row m assigns x_{i+1} the value of bit i of m. Variables are
 * addressed 0-based in the API (index i is x_{i+1}). */
class BoolPoly {
public:
  static BoolPoly constant(std::size_t arity, bool value);
  static BoolPoly variable(std::size_t arity, std::size_t var);
  /// Table given as the low 2^arity bits of `rows` (arity ≤ 6).
  static BoolPoly from_bits(std::size_t arity, std::uint64_t rows);

  template <typename Fn>
  static BoolPoly from_function(std::size_t arity, Fn&& fn) {
    BoolPoly p = constant(arity, false);
    for (std::uint64_t m = 0; m < p.rows(); ++m) {
      p.set(m, static_cast<bool>(fn(m)));
    }
    return p;
  }

  std::size_t arity() const { return arity_; }
  std::uint64_t rows() const { return std::uint64_t{1} << arity_; }

  bool at(std::uint64_t row) const { return (table_[row >> 6] >> (row & 63)) & 1u; }
  void set(std::uint64_t row, bool value);

  bool is_zero() const;
  bool is_one() const;

  /// Fix variable `var` to `value`; the result has arity - 1 and keeps the
  /// remaining variables in order.
  BoolPoly cofactor(std::size_t var, bool value) const;

  BoolPoly operator!() const;
  BoolPoly operator&(const BoolPoly& o) const;
  BoolPoly operator|(const BoolPoly& o) const;
  BoolPoly operator^(const BoolPoly& o) const;

  friend bool operator==(const BoolPoly&, const BoolPoly&) = default;

private:
  BoolPoly(std::size_t arity, std::vector<std::uint64_t> table)
      : arity_(arity), table_(std::move(table)) {}

  void require_same_arity(const BoolPoly& o) const;
  void clear_padding();

  std::size_t arity_;
  std::vector<std::uint64_t> table_;
};

/// P(args) in `algebra`: the join over minterms m with P(m) = 1 of the meets
/// ⋀ (args_i if bit i of m else ¬args_i). Evaluated atom by atom.
Element eval_poly(const BoolPoly& p, std::span<const Element> args, const FiniteAlgebra& algebra);

/// Equality of truth tables; throws on arity mismatch.
bool polys_equal(const BoolPoly& p, const BoolPoly& q);

} // namespace tightsigma
