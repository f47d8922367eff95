#include "tightsigma/subalgebra.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace tightsigma {

namespace {

void require_same_ambient(const SubalgebraPartition& a, const SubalgebraPartition& b) {
  if (a.atom_count() != b.atom_count()) {
    throw Error(ErrorKind::ambient_mismatch, "subalgebras live in algebras of " +
                                                 std::to_string(a.atom_count()) + " and " +
                                                 std::to_string(b.atom_count()) + " atoms");
  }
}

void require_member(const SubalgebraPartition& r, Element a) {
  if (!r.ambient().contains(a)) {
    throw Error(ErrorKind::foreign_element, "element " + to_string(a) + " is not in the " +
                                                std::to_string(r.atom_count()) +
                                                "-atom ambient algebra");
  }
}

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) {
      parent_[std::max(a, b)] = std::min(a, b);
    }
  }

private:
  std::vector<std::size_t> parent_;
};

} // namespace

SubalgebraPartition::SubalgebraPartition(std::size_t atom_count, std::vector<Element> blocks)
    : atom_count_(atom_count), blocks_(std::move(blocks)), block_of_(atom_count) {
  const FiniteAlgebra algebra(atom_count);
  Element seen;
  for (Element b : blocks_) {
    if (b.empty()) {
      throw Error(ErrorKind::precondition, "partition has an empty block");
    }
    algebra.require(b);
    if (b.meets(seen)) {
      throw Error(ErrorKind::precondition, "partition blocks overlap at " + to_string(b & seen));
    }
    seen |= b;
  }
  if (seen != algebra.top()) {
    throw Error(ErrorKind::precondition,
                "partition misses atoms " + to_string(algebra.complement(seen)));
  }
  std::sort(blocks_.begin(), blocks_.end(), [](Element a, Element b) {
    return std::countr_zero(a.bits()) < std::countr_zero(b.bits());
  });
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    for (std::size_t atom : blocks_[i].atoms()) {
      block_of_[atom] = i;
    }
  }
}

SubalgebraPartition SubalgebraPartition::trivial(std::size_t atom_count) {
  return SubalgebraPartition(atom_count, {FiniteAlgebra(atom_count).top()});
}

SubalgebraPartition SubalgebraPartition::discrete(std::size_t atom_count) {
  std::vector<Element> blocks;
  for (std::size_t i = 0; i < atom_count; ++i) {
    blocks.push_back(Element::atom(i));
  }
  return SubalgebraPartition(atom_count, std::move(blocks));
}

SubalgebraPartition SubalgebraPartition::from_blocks(
    std::size_t atom_count, const std::vector<std::vector<std::size_t>>& blocks) {
  std::vector<Element> elems;
  elems.reserve(blocks.size());
  for (const auto& b : blocks) {
    for (std::size_t a : b) {
      if (a >= atom_count) {
        throw Error(ErrorKind::foreign_element, "block atom " + std::to_string(a) +
                                                    " out of range for " +
                                                    std::to_string(atom_count) + " atoms");
      }
    }
    elems.push_back(Element::of(std::span<const std::size_t>(b)));
  }
  return SubalgebraPartition(atom_count, std::move(elems));
}

SubalgebraPartition SubalgebraPartition::from_labels(std::span<const std::size_t> label) {
  std::map<std::size_t, std::uint64_t> fibres;
  for (std::size_t atom = 0; atom < label.size(); ++atom) {
    fibres[label[atom]] |= std::uint64_t{1} << atom;
  }
  std::vector<Element> blocks;
  for (const auto& [_, bits] : fibres) {
    blocks.push_back(Element::from_bits(bits));
  }
  return SubalgebraPartition(label.size(), std::move(blocks));
}

Element SubalgebraPartition::element_from_blocks(std::uint64_t mask) const {
  Element out;
  for (std::uint64_t m = mask; m != 0; m &= m - 1) {
    out |= blocks_[static_cast<std::size_t>(std::countr_zero(m))];
  }
  return out;
}

std::uint64_t SubalgebraPartition::blocks_meeting(Element e) const {
  std::uint64_t mask = 0;
  for (std::size_t atom : e.atoms()) {
    mask |= std::uint64_t{1} << block_of_[atom];
  }
  return mask;
}

bool SubalgebraPartition::contains(Element e) const {
  return ambient().contains(e) && element_from_blocks(blocks_meeting(e)) == e;
}

std::vector<Element> SubalgebraPartition::elements() const {
  if (blocks_.size() > 30) {
    throw Error(ErrorKind::size_bound, "refusing to enumerate a subalgebra with more than 2^30 elements");
  }
  std::vector<Element> out;
  out.reserve(std::size_t{1} << blocks_.size());
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << blocks_.size()); ++m) {
    out.push_back(element_from_blocks(m));
  }
  return out;
}

bool SubalgebraPartition::is_subalgebra_of(const SubalgebraPartition& other) const {
  require_same_ambient(*this, other);
  return std::all_of(blocks_.begin(), blocks_.end(),
                     [&](Element b) { return other.contains(b); });
}

std::vector<std::vector<std::size_t>> SubalgebraPartition::block_lists() const {
  std::vector<std::vector<std::size_t>> out;
  out.reserve(blocks_.size());
  for (Element b : blocks_) {
    out.push_back(b.atoms());
  }
  return out;
}

SubalgebraPartition generate(const FiniteAlgebra& algebra, std::span<const Element> gens) {
  std::vector<Element> blocks{algebra.top()};
  for (Element g : gens) {
    algebra.require(g);
    std::vector<Element> next;
    next.reserve(blocks.size() * 2);
    for (Element b : blocks) {
      if (Element in = b & g; !in.empty()) {
        next.push_back(in);
      }
      if (Element out = b - g; !out.empty()) {
        next.push_back(out);
      }
    }
    blocks = std::move(next);
  }
  return SubalgebraPartition(algebra.atom_count(), std::move(blocks));
}

SubalgebraPartition join(const SubalgebraPartition& s1, const SubalgebraPartition& s2) {
  require_same_ambient(s1, s2);
  std::vector<Element> blocks;
  for (Element b1 : s1.blocks()) {
    for (Element b2 : s2.blocks()) {
      if (Element cell = b1 & b2; !cell.empty()) {
        blocks.push_back(cell);
      }
    }
  }
  return SubalgebraPartition(s1.atom_count(), std::move(blocks));
}

SubalgebraPartition intersect(const SubalgebraPartition& s1, const SubalgebraPartition& s2) {
  require_same_ambient(s1, s2);
  UnionFind uf(s1.atom_count());
  for (const auto* s : {&s1, &s2}) {
    for (Element b : s->blocks()) {
      const auto atoms = b.atoms();
      for (std::size_t i = 1; i < atoms.size(); ++i) {
        uf.unite(atoms[0], atoms[i]);
      }
    }
  }
  std::vector<std::size_t> label(s1.atom_count());
  for (std::size_t a = 0; a < label.size(); ++a) {
    label[a] = uf.find(a);
  }
  return SubalgebraPartition::from_labels(label);
}

Element upper_approx(const SubalgebraPartition& r, Element a) {
  require_member(r, a);
  return r.element_from_blocks(r.blocks_meeting(a));
}

Element lower_approx(const SubalgebraPartition& r, Element a) {
  require_member(r, a);
  Element out;
  for (Element b : r.blocks()) {
    if (b.subset_of(a)) {
      out |= b;
    }
  }
  return out;
}

std::optional<Element> interpolate(const SubalgebraPartition& r, Element c1, Element c2) {
  require_member(r, c1);
  require_member(r, c2);
  if (!c1.subset_of(c2)) {
    throw Error(ErrorKind::precondition,
                "interpolate needs c1 <= c2, got " + to_string(c1) + " and " + to_string(c2));
  }
  const Element candidate = upper_approx(r, c1);
  if (candidate.subset_of(c2)) {
    return candidate;
  }
  return std::nullopt;
}

bool commute(const SubalgebraPartition& s1, const SubalgebraPartition& s2) {
  const SubalgebraPartition common = intersect(s1, s2);
  const std::size_t k = common.block_count();
  std::vector<std::set<std::size_t>> left(k), right(k);
  std::vector<std::set<std::pair<std::size_t, std::size_t>>> cells(k);
  for (std::size_t atom = 0; atom < s1.atom_count(); ++atom) {
    const std::size_t r = common.block_of(atom);
    const std::size_t b1 = s1.block_of(atom);
    const std::size_t b2 = s2.block_of(atom);
    left[r].insert(b1);
    right[r].insert(b2);
    cells[r].emplace(b1, b2);
  }
  for (std::size_t r = 0; r < k; ++r) {
    if (cells[r].size() != left[r].size() * right[r].size()) {
      return false;
    }
  }
  return true;
}

} // namespace tightsigma
