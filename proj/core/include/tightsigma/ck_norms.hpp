#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "tightsigma/boolean.hpp"

namespace tightsigma {

using Rational = boost::rational<std::int64_t>;

/// Accepts "3", "-3/4" and finite decimals such as "0.125".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

/// A function on the atoms of a finite algebra, i.e. a continuous function
/// on its (discrete) Stone space.
class StepFunction {
public:
  StepFunction(FiniteAlgebra algebra, std::vector<Rational> values);

  static StepFunction constant(FiniteAlgebra algebra, Rational value);
  static StepFunction indicator(FiniteAlgebra algebra, Element e);

  const FiniteAlgebra& algebra() const { return algebra_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& at(std::size_t atom) const { return values_[atom]; }

  StepFunction operator+(const StepFunction& o) const;
  StepFunction operator-(const StepFunction& o) const;
  StepFunction operator*(const Rational& k) const;

private:
  FiniteAlgebra algebra_;
  std::vector<Rational> values_;
};

/// max over atoms of |Σ λ_i f_i|.
Rational sup_norm(std::span<const Rational> coeffs, std::span<const StepFunction> fs);
Rational sup_norm(const StepFunction& f);

/// c[f,p,q] = {f ≤ p}, which sits between {f ≤ p} and {f < q}. Needs p < q.
Element clopen_bracket(const StepFunction& f, const Rational& p, const Rational& q);

// --- chain norms --------------------------------------------------------

enum class Pairing { nested, interleaved };

/* Labels for an ascending chain of 2n sets: label j (0-based) goes to the
 * chain position perm[j]. Nested is the identity; interleaved places
 * c_1 ⊂ c_3 ⊂ ... ⊂ c_{2n-1} ⊂ c_{2n} ⊂ ... ⊂ c_4 ⊂ c_2. */
std::vector<std::size_t> pairing_permutation(Pairing pattern, std::size_t n);

/* ‖Σ_i 1_{c_{2i}} − 1_{c_{2i−1}}‖ (1-based labels) where c_j =
 * chain[perm[j-1]]. The chain must be ascending under inclusion in the
 * order given, of even nonzero length, and perm a permutation of it. */
Rational chain_norm(const FiniteAlgebra& algebra, std::span<const Element> chain,
                    std::span<const std::size_t> perm);

/// The chain {0} ⊂ {0,1} ⊂ ... ⊂ {0..2n-1} in 2n+1 atoms.
std::vector<Element> standard_chain(std::size_t n);

// --- transfer -----------------------------------------------------------

/// δℤ ∩ [−5N, 5N], ascending. δ must be positive.
std::vector<Rational> delta_grid(const Rational& delta, std::int64_t big_n);

/// The sets c[f,p,q] for p ranging over the grid (q plays no role in the
/// canonical choice beyond p < q).
std::vector<Element> level_pattern(const StepFunction& f, std::span<const Rational> grid);

/// Same level pattern for every paired function.
bool same_brackets(std::span<const StepFunction> fs, std::span<const StepFunction> gs,
                   std::span<const Rational> grid);

/// n · max|λ_i| · 3δ.
Rational transfer_bound(std::span<const Rational> coeffs, const Rational& delta);

} // namespace tightsigma
