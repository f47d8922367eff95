#include "tightsigma/pushout.hpp"

#include <algorithm>

namespace tightsigma {

namespace {

std::size_t first_atom(Element e) { return static_cast<std::size_t>(std::countr_zero(e.bits())); }

bool is_square(const Diagram& d) {
  const std::size_t n = d.top.atom_count();
  if (d.a.atom_count() != n || d.s.atom_count() != n || d.r.atom_count() != n) {
    return false;
  }
  return d.r.is_subalgebra_of(d.a) && d.r.is_subalgebra_of(d.s) &&
         d.a.is_subalgebra_of(d.top) && d.s.is_subalgebra_of(d.top);
}

} // namespace

void validate(const AmalgamInput& input) {
  if (input.r_in_a.atom_count() != input.a_atoms || input.r_in_s.atom_count() != input.s_atoms) {
    throw Error(ErrorKind::ambient_mismatch, "R partitions do not match the atom counts of A and S");
  }
  const std::size_t k = input.r_in_a.block_count();
  if (input.r_in_s.block_count() != k) {
    throw Error(ErrorKind::precondition, "R has " + std::to_string(k) + " atoms inside A but " +
                                             std::to_string(input.r_in_s.block_count()) +
                                             " inside S");
  }
  if (input.matching.size() != k) {
    throw Error(ErrorKind::precondition, "matching must list one S-block per R-block");
  }
  std::vector<char> used(k, 0);
  for (std::size_t target : input.matching) {
    if (target >= k || used[target]) {
      throw Error(ErrorKind::precondition, "matching is not a bijection between R-blocks");
    }
    used[target] = 1;
  }
}

std::size_t amalgam_atom_count(const AmalgamInput& input) {
  validate(input);
  std::size_t total = 0;
  for (std::size_t i = 0; i < input.r_in_a.block_count(); ++i) {
    total += input.r_in_a.blocks()[i].count() *
             input.r_in_s.blocks()[input.matching[i]].count();
  }
  return total;
}

Amalgam amalgamate(const AmalgamInput& input) {
  validate(input);
  const std::size_t n = amalgam_atom_count(input);
  if (n > kMaxRepresentableAtoms) {
    throw Error(ErrorKind::size_bound, "push-out would have " + std::to_string(n) + " atoms");
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n);
  std::vector<std::size_t> dual_a, dual_s;
  for (std::size_t alpha = 0; alpha < input.a_atoms; ++alpha) {
    const std::size_t matched = input.matching[input.r_in_a.block_of(alpha)];
    for (std::size_t sigma = 0; sigma < input.s_atoms; ++sigma) {
      if (input.r_in_s.block_of(sigma) == matched) {
        pairs.emplace_back(alpha, sigma);
        dual_a.push_back(alpha);
        dual_s.push_back(sigma);
      }
    }
  }
  return Amalgam{FiniteAlgebra(n), std::move(pairs), Morphism(input.a_atoms, std::move(dual_a)),
                 Morphism(input.s_atoms, std::move(dual_s))};
}

Diagram Amalgam::diagram(const AmalgamInput& input) const {
  const std::size_t n = algebra.atom_count();
  std::vector<std::size_t> a_label(n), s_label(n), r_label(n);
  for (std::size_t i = 0; i < n; ++i) {
    a_label[i] = atom_pairs[i].first;
    s_label[i] = atom_pairs[i].second;
    r_label[i] = input.r_in_a.block_of(atom_pairs[i].first);
  }
  return Diagram{SubalgebraPartition::discrete(n), SubalgebraPartition::from_labels(a_label),
                 SubalgebraPartition::from_labels(s_label),
                 SubalgebraPartition::from_labels(r_label)};
}

std::string to_string(PushoutViolation v) {
  switch (v) {
  case PushoutViolation::not_a_square:
    return "not_a_square";
  case PushoutViolation::not_generating:
    return "not_generating";
  case PushoutViolation::wrong_intersection:
    return "wrong_intersection";
  case PushoutViolation::not_commuting:
    return "not_commuting";
  }
  return "unknown";
}

PushoutReport verify_pushout(const Diagram& d) {
  PushoutReport report;
  if (!is_square(d)) {
    report.violations.push_back(PushoutViolation::not_a_square);
    if (d.a.atom_count() != d.top.atom_count() || d.s.atom_count() != d.top.atom_count() ||
        d.r.atom_count() != d.top.atom_count()) {
      return report;
    }
  }
  if (!(join(d.a, d.s) == d.top)) {
    report.violations.push_back(PushoutViolation::not_generating);
  }
  if (!(intersect(d.a, d.s) == d.r)) {
    report.violations.push_back(PushoutViolation::wrong_intersection);
  }
  if (!commute(d.a, d.s)) {
    report.violations.push_back(PushoutViolation::not_commuting);
  }
  return report;
}

MediatingResult mediating_morphisms(const Diagram& d, std::size_t c_atoms, const Morphism& f,
                                    const Morphism& g) {
  if (!is_square(d)) {
    throw Error(ErrorKind::precondition, "mediating morphisms need a commutative square");
  }
  if (f.source_atoms() != d.a.block_count() || g.source_atoms() != d.s.block_count() ||
      f.target_atoms() != c_atoms || g.target_atoms() != c_atoms) {
    throw Error(ErrorKind::ambient_mismatch, "f or g does not match the diagram and C");
  }
  MediatingResult result;
  for (std::size_t c = 0; c < c_atoms; ++c) {
    const std::size_t via_a = d.r.block_of(first_atom(d.a.blocks()[f.dual()[c]]));
    const std::size_t via_s = d.r.block_of(first_atom(d.s.blocks()[g.dual()[c]]));
    if (via_a != via_s) {
      return result;
    }
  }
  result.compatible = true;

  std::vector<std::vector<std::size_t>> candidates(c_atoms);
  for (std::size_t c = 0; c < c_atoms; ++c) {
    const Element allowed = d.a.blocks()[f.dual()[c]] & d.s.blocks()[g.dual()[c]];
    for (std::size_t t = 0; t < d.top.block_count(); ++t) {
      if (d.top.blocks()[t].subset_of(allowed)) {
        candidates[c].push_back(t);
      }
    }
    if (candidates[c].empty()) {
      return result;
    }
  }
  std::size_t total = 1;
  for (const auto& cs : candidates) {
    total *= cs.size();
    if (total > (std::size_t{1} << 20)) {
      throw Error(ErrorKind::size_bound, "too many mediating morphisms to enumerate");
    }
  }
  std::vector<std::size_t> pick(c_atoms, 0);
  for (std::size_t n = 0; n < total; ++n) {
    std::vector<std::size_t> dual(c_atoms);
    for (std::size_t c = 0; c < c_atoms; ++c) {
      dual[c] = candidates[c][pick[c]];
    }
    result.morphisms.emplace_back(d.top.block_count(), std::move(dual));
    for (std::size_t c = c_atoms; c-- > 0;) {
      if (++pick[c] < candidates[c].size()) {
        break;
      }
      pick[c] = 0;
    }
  }
  return result;
}

} // namespace tightsigma
