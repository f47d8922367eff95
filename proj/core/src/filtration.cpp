#include "tightsigma/filtration.hpp"

#include <algorithm>
#include <stdexcept>

#include "tightsigma/random.hpp"

namespace tightsigma {

// --- IndexSet -----------------------------------------------------------

IndexSet::IndexSet(std::initializer_list<std::size_t> indices)
    : IndexSet(std::vector<std::size_t>(indices)) {}

IndexSet::IndexSet(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

IndexSet IndexSet::range(std::size_t end) {
  std::vector<std::size_t> v(end);
  for (std::size_t i = 0; i < end; ++i) {
    v[i] = i;
  }
  return IndexSet(std::move(v));
}

bool IndexSet::contains(std::size_t i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

void IndexSet::insert(std::size_t i) {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), i);
  if (it == indices_.end() || *it != i) {
    indices_.insert(it, i);
  }
}

IndexSet IndexSet::below(std::size_t end) const {
  return IndexSet(std::vector<std::size_t>(
      indices_.begin(), std::lower_bound(indices_.begin(), indices_.end(), end)));
}

IndexSet IndexSet::operator|(const IndexSet& o) const {
  std::vector<std::size_t> out;
  std::set_union(indices_.begin(), indices_.end(), o.indices_.begin(), o.indices_.end(),
                 std::back_inserter(out));
  return IndexSet(std::move(out));
}

IndexSet IndexSet::operator&(const IndexSet& o) const {
  std::vector<std::size_t> out;
  std::set_intersection(indices_.begin(), indices_.end(), o.indices_.begin(), o.indices_.end(),
                        std::back_inserter(out));
  return IndexSet(std::move(out));
}

bool IndexSet::subset_of(const IndexSet& o) const {
  return std::includes(o.indices_.begin(), o.indices_.end(), indices_.begin(), indices_.end());
}

std::string to_string(const IndexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i != 0) {
      out += ',';
    }
    out += std::to_string(s.indices()[i]);
  }
  return out + "}";
}

// --- Filtration ---------------------------------------------------------

SubalgebraPartition push_forward(const SubalgebraPartition& p, const Morphism& h) {
  if (p.atom_count() != h.source_atoms()) {
    throw Error(ErrorKind::ambient_mismatch, "cannot push a partition of " +
                                                 std::to_string(p.atom_count()) +
                                                 " atoms along a morphism from " +
                                                 std::to_string(h.source_atoms()) + " atoms");
  }
  std::vector<std::size_t> label(h.target_atoms());
  for (std::size_t y = 0; y < label.size(); ++y) {
    label[y] = p.block_of(h.dual()[y]);
  }
  return SubalgebraPartition::from_labels(label);
}

namespace {

/// Drops indices from `start`, highest first, while `keep` still holds.
template <typename Pred>
IndexSet shrink(IndexSet start, Pred&& keep) {
  const auto indices = start.indices();
  for (auto it = indices.rbegin(); it != indices.rend(); ++it) {
    std::vector<std::size_t> without;
    for (std::size_t i : start) {
      if (i != *it) {
        without.push_back(i);
      }
    }
    IndexSet candidate(std::move(without));
    if (keep(candidate)) {
      start = std::move(candidate);
    }
  }
  return start;
}

} // namespace

Filtration::Filtration(std::size_t base_atoms) : base_atoms_(base_atoms) {
  to_final_.push_back(Morphism::identity(base_atoms));
}

std::size_t Filtration::atoms_at(std::size_t stage) const {
  if (stage > length()) {
    throw Error(ErrorKind::precondition, "stage " + std::to_string(stage) +
                                             " beyond filtration length " +
                                             std::to_string(length()));
  }
  return to_final_[stage].source_atoms();
}

SubalgebraPartition Filtration::stage_in_final(std::size_t stage) const {
  return push_forward(SubalgebraPartition::discrete(atoms_at(stage)), to_final_[stage]);
}

void Filtration::push_step(FiltrationStep step, std::optional<IndexSet> support) {
  const std::size_t current = final_atoms();
  if (step.embedding.source_atoms() != current || step.r.atom_count() != current ||
      step.s.atom_count() != step.embedding.target_atoms()) {
    throw Error(ErrorKind::ambient_mismatch,
                "step " + std::to_string(length()) + " does not start at the current " +
                    std::to_string(current) + "-atom algebra");
  }
  const std::size_t alpha = length();
  if (support) {
    for (std::size_t i : *support) {
      if (i >= alpha) {
        throw Error(ErrorKind::precondition, "support of step " + std::to_string(alpha) +
                                                 " uses later index " + std::to_string(i));
      }
    }
  } else {
    const auto covers = [&](const IndexSet& delta) {
      return step.r.is_subalgebra_of(skeleton(*this, delta));
    };
    support = covers(IndexSet::range(alpha)) ? shrink(IndexSet::range(alpha), covers)
                                             : IndexSet::range(alpha);
  }

  for (auto& m : to_final_) {
    m = m.then(step.embedding);
  }
  to_final_.push_back(Morphism::identity(step.embedding.target_atoms()));
  for (auto& p : r_final_) {
    p = push_forward(p, step.embedding);
  }
  for (auto& p : s_final_) {
    p = push_forward(p, step.embedding);
  }
  r_final_.push_back(push_forward(step.r, step.embedding));
  s_final_.push_back(step.s);
  supports_.push_back(std::move(*support));
  steps_.push_back(std::move(step));
}

void Filtration::push_amalgam(const AmalgamInput& input, std::optional<IndexSet> support) {
  if (input.a_atoms != final_atoms()) {
    throw Error(ErrorKind::ambient_mismatch, "amalgam expects A with " +
                                                 std::to_string(input.a_atoms) +
                                                 " atoms, filtration is at " +
                                                 std::to_string(final_atoms()));
  }
  const Amalgam amalgam = amalgamate(input);
  std::vector<std::size_t> s_label(amalgam.atom_pairs.size());
  for (std::size_t i = 0; i < s_label.size(); ++i) {
    s_label[i] = amalgam.atom_pairs[i].second;
  }
  push_step(FiltrationStep{amalgam.embed_a, input.r_in_a,
                           SubalgebraPartition::from_labels(s_label), input},
            std::move(support));
}

// --- construction -------------------------------------------------------

Filtration build_free_filtration(std::size_t length) {
  Filtration f;
  for (std::size_t i = 0; i < length; ++i) {
    f.push_amalgam(AmalgamInput{f.final_atoms(), 2, SubalgebraPartition::trivial(f.final_atoms()),
                                SubalgebraPartition::trivial(2), {0}});
  }
  return f;
}

BuildResult build_filtration(std::span<const AmalgamInput> schedule, std::size_t max_atoms) {
  BuildResult result{Filtration{}, {}};
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const std::size_t atoms = amalgam_atom_count(schedule[i]);
    if (atoms > max_atoms) {
      result.rejected.push_back({i, atoms});
      break;
    }
    result.filtration.push_amalgam(schedule[i]);
  }
  return result;
}

namespace {

/// Random surjection of `n` items onto `k` labels.
std::vector<std::size_t> random_surjection(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    order[i] = i;
  }
  rng.shuffle(order);
  std::vector<std::size_t> label(n);
  for (std::size_t i = 0; i < n; ++i) {
    label[order[i]] = i < k ? i : rng.below(k);
  }
  return label;
}

} // namespace

BuildResult build_random_filtration(const RandomFiltrationOptions& options) {
  if (options.max_s_atoms == 0 || options.max_atoms == 0 ||
      options.max_atoms > kMaxRepresentableAtoms) {
    throw Error(ErrorKind::precondition, "random filtration bounds must be positive and representable");
  }
  Rng rng(options.seed);
  BuildResult result{Filtration{}, {}};
  Filtration& f = result.filtration;
  for (std::size_t alpha = 0; alpha < options.length; ++alpha) {
    const std::size_t n = f.final_atoms();
    std::optional<AmalgamInput> chosen;
    IndexSet delta;
    for (std::size_t attempt = 0; attempt <= options.attempts_per_step && !chosen; ++attempt) {
      std::vector<std::size_t> picked;
      for (std::size_t i = 0; i < alpha; ++i) {
        if (rng.coin()) {
          picked.push_back(i);
        }
      }
      delta = IndexSet(std::move(picked));
      const SubalgebraPartition base = skeleton(f, delta);
      const std::size_t r_blocks = rng.between(1, std::min(base.block_count(), options.max_s_atoms));
      const auto group = random_surjection(rng, base.block_count(), r_blocks);
      std::vector<std::size_t> r_label(n);
      for (std::size_t atom = 0; atom < n; ++atom) {
        r_label[atom] = group[base.block_of(atom)];
      }
      const auto r_in_a = SubalgebraPartition::from_labels(r_label);

      const bool last_resort = attempt == options.attempts_per_step;
      const std::size_t s_atoms = last_resort ? r_blocks : rng.between(r_blocks, options.max_s_atoms);
      const auto r_in_s = SubalgebraPartition::from_labels(random_surjection(rng, s_atoms, r_blocks));
      std::vector<std::size_t> matching(r_blocks);
      for (std::size_t i = 0; i < r_blocks; ++i) {
        matching[i] = i;
      }
      rng.shuffle(matching);

      AmalgamInput input{n, s_atoms, r_in_a, r_in_s, std::move(matching)};
      const std::size_t atoms = amalgam_atom_count(input);
      if (atoms > options.max_atoms) {
        result.rejected.push_back({alpha, atoms});
        continue;
      }
      chosen = std::move(input);
    }
    if (!chosen) {
      throw std::logic_error("random filtration: copy step cannot overflow");
    }
    f.push_amalgam(*chosen, delta);
  }
  return result;
}

// --- verification -------------------------------------------------------

std::string to_string(FiltrationViolationKind k) {
  switch (k) {
  case FiltrationViolationKind::base_not_two_element:
    return "base_not_two_element";
  case FiltrationViolationKind::embedding_not_injective:
    return "embedding_not_injective";
  case FiltrationViolationKind::r_not_in_s:
    return "r_not_in_s";
  case FiltrationViolationKind::not_pushout:
    return "not_pushout";
  case FiltrationViolationKind::support_invalid:
    return "support_invalid";
  }
  return "unknown";
}

FiltrationReport verify_filtration(const Filtration& f) {
  FiltrationReport report;
  if (f.base_atoms() != 1) {
    report.violations.push_back({std::nullopt, FiltrationViolationKind::base_not_two_element,
                                 "B_0 has " + std::to_string(f.base_atoms()) + " atoms"});
  }
  for (std::size_t alpha = 0; alpha < f.length(); ++alpha) {
    const FiltrationStep& step = f.steps()[alpha];
    const std::size_t next = step.embedding.target_atoms();
    if (!step.embedding.is_injective()) {
      report.violations.push_back({alpha, FiltrationViolationKind::embedding_not_injective,
                                   "embedding of B_" + std::to_string(alpha) +
                                       " is not injective"});
    }
    const SubalgebraPartition r = push_forward(step.r, step.embedding);
    if (!r.is_subalgebra_of(step.s)) {
      report.violations.push_back({alpha, FiltrationViolationKind::r_not_in_s,
                                   "R_" + std::to_string(alpha) + " is not contained in S_" +
                                       std::to_string(alpha)});
    }
    const Diagram square{SubalgebraPartition::discrete(next),
                         push_forward(SubalgebraPartition::discrete(step.embedding.source_atoms()),
                                      step.embedding),
                         step.s, r};
    const PushoutReport pushout = verify_pushout(square);
    if (!pushout.ok()) {
      std::string detail;
      for (auto v : pushout.violations) {
        detail += (detail.empty() ? "" : ",") + to_string(v);
      }
      report.violations.push_back({alpha, FiltrationViolationKind::not_pushout, detail});
    }
    const IndexSet& delta = f.support(alpha);
    if (!f.r_in_final(alpha).is_subalgebra_of(skeleton(f, delta))) {
      report.violations.push_back({alpha, FiltrationViolationKind::support_invalid,
                                   "R_" + std::to_string(alpha) + " is not inside E(" +
                                       to_string(delta) + ")"});
    }
  }
  return report;
}

// --- skeletons ----------------------------------------------------------

SubalgebraPartition skeleton(const Filtration& f, const IndexSet& gamma) {
  SubalgebraPartition out = SubalgebraPartition::trivial(f.final_atoms());
  for (std::size_t i : gamma) {
    if (i >= f.length()) {
      throw Error(ErrorKind::precondition, "index " + std::to_string(i) +
                                               " beyond filtration length " +
                                               std::to_string(f.length()));
    }
    out = join(out, f.s_in_final(i));
  }
  return out;
}

bool is_saturated(const Filtration& f, const IndexSet& gamma) {
  return std::all_of(gamma.begin(), gamma.end(), [&](std::size_t g) {
    return f.r_in_final(g).is_subalgebra_of(skeleton(f, gamma.below(g)));
  });
}

IndexSet close_under_supports(const Filtration& f, const IndexSet& gamma) {
  IndexSet closed = gamma;
  for (bool grew = true; grew;) {
    grew = false;
    IndexSet next = closed;
    for (std::size_t g : closed) {
      if (g >= f.length()) {
        throw Error(ErrorKind::precondition, "index " + std::to_string(g) +
                                                 " beyond filtration length");
      }
      next = next | f.support(g);
    }
    if (next.size() != closed.size()) {
      closed = std::move(next);
      grew = true;
    }
  }
  return closed;
}

IndexSet element_support(const Filtration& f, Element e) {
  f.final_algebra().require(e);
  const auto covers = [&](const IndexSet& gamma) { return skeleton(f, gamma).contains(e); };
  const IndexSet all = IndexSet::range(f.length());
  if (!covers(all)) {
    throw Error(ErrorKind::precondition,
                "element " + to_string(e) + " is not generated by the step algebras");
  }
  return shrink(all, covers);
}

IndexSet saturate(const Filtration& f, std::span<const Element> h) {
  IndexSet gamma;
  for (Element e : h) {
    gamma = gamma | element_support(f, e);
  }
  return close_under_supports(f, gamma);
}

SkeletonPushoutResult check_skeleton_pushout(const Filtration& f, const IndexSet& gamma1,
                                             const IndexSet& gamma2) {
  SkeletonPushoutResult result;
  const IndexSet common = gamma1 & gamma2;
  result.gamma1_saturated = is_saturated(f, gamma1);
  result.gamma2_saturated = is_saturated(f, gamma2);
  result.intersection_saturated = is_saturated(f, common);
  if (!result.preconditions_hold()) {
    return result;
  }
  const Diagram square{skeleton(f, gamma1 | gamma2), skeleton(f, gamma1), skeleton(f, gamma2),
                       skeleton(f, common)};
  result.pushout = verify_pushout(square);
  return result;
}

// --- bracket solving ----------------------------------------------------

namespace {

std::vector<std::string> bracket_preconditions(const Filtration& f, const BracketProblem& pb) {
  std::vector<std::string> out;
  const std::size_t n = pb.poly.arity();
  if (n == 0 || pb.elements.size() != n || pb.gammas.size() != n) {
    out.push_back("arity: polynomial of arity " + std::to_string(n) + " with " +
                  std::to_string(pb.elements.size()) + " elements and " +
                  std::to_string(pb.gammas.size()) + " index sets");
    return out;
  }
  const auto in_range = [&](const IndexSet& s) {
    return std::all_of(s.begin(), s.end(), [&](std::size_t i) { return i < f.length(); });
  };
  if (!in_range(pb.delta) ||
      !std::all_of(pb.gammas.begin(), pb.gammas.end(), in_range)) {
    out.push_back("index: an index set refers past the filtration length");
    return out;
  }
  if (!is_saturated(f, pb.delta)) {
    out.push_back("delta_not_saturated: " + to_string(pb.delta));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_saturated(f, pb.gammas[i])) {
      out.push_back("gamma_not_saturated: Gamma_" + std::to_string(i + 1) + " = " +
                    to_string(pb.gammas[i]));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!((pb.gammas[i] & pb.gammas[j]) == pb.delta)) {
        out.push_back("intersection_not_delta: Gamma_" + std::to_string(i + 1) + " & Gamma_" +
                      std::to_string(j + 1) + " = " +
                      to_string(pb.gammas[i] & pb.gammas[j]));
      }
    }
  }
  const FiniteAlgebra top = f.final_algebra();
  bool elements_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (!top.contains(pb.elements[i])) {
      out.push_back("foreign_element: a_" + std::to_string(i + 1));
      elements_ok = false;
    } else if (!skeleton(f, pb.gammas[i]).contains(pb.elements[i])) {
      out.push_back("element_outside_skeleton: a_" + std::to_string(i + 1) + " not in E(" +
                    to_string(pb.gammas[i]) + ")");
    }
  }
  if (elements_ok && !eval_poly(pb.poly, pb.elements, top).empty()) {
    out.push_back("equation_fails: P(a) != 0");
  }
  return out;
}

} // namespace

BracketResult bracket_solve(const Filtration& f, const BracketProblem& problem) {
  BracketResult result;
  result.violations = bracket_preconditions(f, problem);
  if (!result.violations.empty()) {
    return result;
  }
  const FiniteAlgebra top = f.final_algebra();
  const SubalgebraPartition e_delta = skeleton(f, problem.delta);
  const std::size_t n = problem.poly.arity();
  const auto& a = problem.elements;

  BracketSolution sol{std::vector<Element>(n), std::vector<Element>(n)};
  std::vector<Element> args(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    const Elimination elim = eliminate(problem.poly, k);
    // Variables after k keep their values a_{k+1..n}; earlier ones range
    // over both ends of their boxes.
    for (std::size_t j = k + 1; j < n; ++j) {
      args[j - 1] = a[j];
    }
    Element lower;
    Element upper = top.top();
    for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << k); ++signs) {
      for (std::size_t j = 0; j < k; ++j) {
        args[j] = (signs >> j) & 1u ? sol.highs[j] : sol.lows[j];
      }
      lower |= eval_poly(elim.lower, args, top);
      upper &= eval_poly(elim.upper, args, top);
    }
    sol.lows[k] = upper_approx(e_delta, lower);
    sol.highs[k] = lower_approx(e_delta, upper);
    if (!sol.lows[k].subset_of(a[k]) || !a[k].subset_of(sol.highs[k])) {
      throw std::logic_error("bracket_solve: canonical bounds do not sandwich a_" +
                             std::to_string(k + 1) + " although the preconditions hold");
    }
  }
  if (!all_signs_vanish(problem.poly, sol.lows, sol.highs, top)) {
    throw std::logic_error("bracket_solve: solution fails the all-sign check");
  }
  result.solution = std::move(sol);
  return result;
}

} // namespace tightsigma
