#include "tightsigma/ck_norms.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>

#include "tightsigma/error.hpp"

namespace tightsigma {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::parse, "not a rational number: '" + std::string(whole) + "'");
  }
  return v;
}

Rational abs_value(const Rational& q) { return q < 0 ? -q : q; }

void require_same_algebra(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (!(a == b)) {
    throw Error(ErrorKind::ambient_mismatch, "step functions live on different algebras");
  }
}

} // namespace

Rational parse_rational(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::int64_t den = parse_int(text.substr(slash + 1), text);
    if (den == 0) {
      throw Error(ErrorKind::parse, "zero denominator in '" + std::string(text) + "'");
    }
    return Rational(parse_int(text.substr(0, slash), text), den);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 17 || frac.front() == '-' || frac.front() == '+') {
      throw Error(ErrorKind::parse, "not a rational number: '" + std::string(text) + "'");
    }
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) {
      scale *= 10;
    }
    const std::string_view int_part = text.substr(0, dot);
    const bool negative = !int_part.empty() && int_part.front() == '-';
    const std::int64_t whole =
        int_part.empty() || int_part == "-" ? 0 : parse_int(int_part, text);
    const Rational f(parse_int(frac, text), scale);
    return negative ? Rational(whole) - f : Rational(whole) + f;
  }
  return Rational(parse_int(text, text));
}

std::string to_string(const Rational& q) {
  if (q.denominator() == 1) {
    return std::to_string(q.numerator());
  }
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

StepFunction::StepFunction(FiniteAlgebra algebra, std::vector<Rational> values)
    : algebra_(algebra), values_(std::move(values)) {
  if (values_.size() != algebra_.atom_count()) {
    throw Error(ErrorKind::arity_mismatch,
                "step function needs " + std::to_string(algebra_.atom_count()) +
                    " values, got " + std::to_string(values_.size()));
  }
}

StepFunction StepFunction::constant(FiniteAlgebra algebra, Rational value) {
  return StepFunction(algebra, std::vector<Rational>(algebra.atom_count(), value));
}

StepFunction StepFunction::indicator(FiniteAlgebra algebra, Element e) {
  algebra.require(e);
  std::vector<Rational> v(algebra.atom_count());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = e.contains(i) ? 1 : 0;
  }
  return StepFunction(algebra, std::move(v));
}

StepFunction StepFunction::operator+(const StepFunction& o) const {
  require_same_algebra(algebra_, o.algebra_);
  std::vector<Rational> v(values_);
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] += o.values_[i];
  }
  return StepFunction(algebra_, std::move(v));
}

StepFunction StepFunction::operator-(const StepFunction& o) const { return *this + o * -1; }

StepFunction StepFunction::operator*(const Rational& k) const {
  std::vector<Rational> v(values_);
  for (Rational& x : v) {
    x *= k;
  }
  return StepFunction(algebra_, std::move(v));
}

Rational sup_norm(std::span<const Rational> coeffs, std::span<const StepFunction> fs) {
  if (coeffs.size() != fs.size()) {
    throw Error(ErrorKind::arity_mismatch, std::to_string(coeffs.size()) +
                                               " coefficients for " +
                                               std::to_string(fs.size()) + " functions");
  }
  if (fs.empty()) {
    return 0;
  }
  const FiniteAlgebra& algebra = fs.front().algebra();
  for (const StepFunction& f : fs) {
    require_same_algebra(algebra, f.algebra());
  }
  Rational best = 0;
  for (std::size_t atom = 0; atom < algebra.atom_count(); ++atom) {
    Rational sum = 0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      sum += coeffs[i] * fs[i].at(atom);
    }
    best = std::max(best, abs_value(sum));
  }
  return best;
}

Rational sup_norm(const StepFunction& f) {
  const Rational one = 1;
  return sup_norm(std::span(&one, 1), std::span(&f, 1));
}

Element clopen_bracket(const StepFunction& f, const Rational& p, const Rational& q) {
  if (!(p < q)) {
    throw Error(ErrorKind::precondition,
                "clopen bracket needs p < q, got p=" + to_string(p) + ", q=" + to_string(q));
  }
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < f.values().size(); ++i) {
    if (f.at(i) <= p) {
      bits |= std::uint64_t{1} << i;
    }
  }
  return Element::from_bits(bits);
}

std::vector<std::size_t> pairing_permutation(Pairing pattern, std::size_t n) {
  std::vector<std::size_t> perm(2 * n);
  std::iota(perm.begin(), perm.end(), 0);
  if (pattern == Pairing::interleaved) {
    for (std::size_t t = 0; t < 2 * n; ++t) {
      perm[t < n ? 2 * t : 2 * (2 * n - t) - 1] = t;
    }
  }
  return perm;
}

Rational chain_norm(const FiniteAlgebra& algebra, std::span<const Element> chain,
                    std::span<const std::size_t> perm) {
  if (chain.empty() || chain.size() % 2 != 0) {
    throw Error(ErrorKind::precondition, "a chain of 2n > 0 sets is required, got " +
                                             std::to_string(chain.size()));
  }
  if (perm.size() != chain.size()) {
    throw Error(ErrorKind::arity_mismatch, "pairing has " + std::to_string(perm.size()) +
                                               " entries for a chain of " +
                                               std::to_string(chain.size()));
  }
  std::vector<bool> hit(chain.size(), false);
  for (std::size_t j : perm) {
    if (j >= chain.size() || hit[j]) {
      throw Error(ErrorKind::precondition, "pairing is not a permutation of the chain");
    }
    hit[j] = true;
  }
  for (std::size_t i = 0; i < chain.size(); ++i) {
    algebra.require(chain[i]);
    if (i > 0 && !chain[i - 1].subset_of(chain[i])) {
      throw Error(ErrorKind::precondition, "not a chain: set " + std::to_string(i) +
                                               " does not contain set " +
                                               std::to_string(i - 1));
    }
  }
  std::vector<StepFunction> fs;
  std::vector<Rational> coeffs;
  for (std::size_t i = 0; i < chain.size(); i += 2) {
    fs.push_back(StepFunction::indicator(algebra, chain[perm[i + 1]]));
    coeffs.emplace_back(1);
    fs.push_back(StepFunction::indicator(algebra, chain[perm[i]]));
    coeffs.emplace_back(-1);
  }
  return sup_norm(coeffs, fs);
}

std::vector<Element> standard_chain(std::size_t n) {
  if (2 * n + 1 > kMaxRepresentableAtoms) {
    throw Error(ErrorKind::size_bound, "chain of length " + std::to_string(2 * n) +
                                           " needs more than " +
                                           std::to_string(kMaxRepresentableAtoms) + " atoms");
  }
  std::vector<Element> out;
  for (std::size_t i = 1; i <= 2 * n; ++i) {
    out.push_back(Element::from_bits((std::uint64_t{1} << i) - 1));
  }
  return out;
}

std::vector<Rational> delta_grid(const Rational& delta, std::int64_t big_n) {
  if (delta <= 0 || big_n < 0) {
    throw Error(ErrorKind::precondition, "grid needs delta > 0 and N >= 0");
  }
  const Rational bound(5 * big_n);
  const std::int64_t steps = boost::rational_cast<std::int64_t>(bound / delta);
  if (steps > 1'000'000) {
    throw Error(ErrorKind::size_bound, "grid of more than 2,000,001 points");
  }
  std::vector<Rational> out;
  for (std::int64_t k = -steps; k <= steps; ++k) {
    out.push_back(delta * k);
  }
  return out;
}

std::vector<Element> level_pattern(const StepFunction& f, std::span<const Rational> grid) {
  std::vector<Element> out;
  for (const Rational& p : grid) {
    out.push_back(clopen_bracket(f, p, p + 1));
  }
  return out;
}

bool same_brackets(std::span<const StepFunction> fs, std::span<const StepFunction> gs,
                   std::span<const Rational> grid) {
  if (fs.size() != gs.size()) {
    return false;
  }
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (!(fs[i].algebra() == gs[i].algebra()) ||
        level_pattern(fs[i], grid) != level_pattern(gs[i], grid)) {
      return false;
    }
  }
  return true;
}

Rational transfer_bound(std::span<const Rational> coeffs, const Rational& delta) {
  Rational biggest = 0;
  for (const Rational& c : coeffs) {
    biggest = std::max(biggest, abs_value(c));
  }
  return Rational(static_cast<std::int64_t>(coeffs.size())) * biggest * delta * 3;
}

} // namespace tightsigma
