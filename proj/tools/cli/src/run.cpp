#include "tightsigma/cli/run.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <functional>
#include <ostream>
#include <set>
#include <stdexcept>

#include <CLI11.hpp>

#include "tightsigma/ck_norms.hpp"
#include "tightsigma/cli/report.hpp"
#include "tightsigma/cli/workspace.hpp"
#include "tightsigma/error.hpp"
#include "tightsigma/random.hpp"
#include "tightsigma/sunflower.hpp"
#include "tightsigma/term.hpp"

namespace tightsigma::cli {

namespace {

using ojson = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string input;
  std::string output;
  std::uint64_t seed = 0;
  std::size_t max_atoms = kDefaultMaxAtoms;
  std::string format = "text";
  bool timing = false;
};

class Context {
public:
  explicit Context(const Globals& g) : globals(g) {}

  const Workspace& workspace() {
    if (!ws_) {
      if (globals.input.empty()) {
        throw UsageError("this subcommand needs --input");
      }
      ws_ = load_workspace(globals.input, globals.max_atoms);
    }
    return *ws_;
  }
  bool has_workspace() const { return !globals.input.empty(); }

  const Globals& globals;

private:
  std::optional<Workspace> ws_;
};

// --- argument helpers ---------------------------------------------------

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) {
      return out;
    }
    start = pos + 1;
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) {
    return "";
  }
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<std::size_t> index_list(const std::string& text, const std::string& what) {
  std::vector<std::size_t> out;
  if (trim(text).empty()) {
    return out;
  }
  for (const auto& part : split(text, ',')) {
    const std::string t = trim(part);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
      throw UsageError(what + ": '" + part + "' is not a non-negative integer");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<std::vector<std::size_t>> index_groups(const std::string& text, const std::string& what) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& group : split(text, ';')) {
    out.push_back(index_list(group, what));
  }
  return out;
}

ojson atoms_json(const std::vector<Element>& es) {
  ojson out = ojson::array();
  for (Element e : es) {
    out.push_back(e.atoms());
  }
  return out;
}

BoolPoly poly_arg(Context& ctx, const std::string& text, std::optional<std::size_t> arity = std::nullopt) {
  if (ctx.has_workspace()) {
    const auto& polys = ctx.workspace().polynomials;
    if (const auto it = polys.find(text); it != polys.end()) {
      return parse_term(it->second, arity);
    }
  }
  return parse_term(text, arity);
}

std::vector<Element> elements_arg(Context& ctx, const std::string& names, const std::string& atoms,
                                  std::size_t algebra_size) {
  if (!names.empty() && !atoms.empty()) {
    throw UsageError("give either --elements or --atoms, not both");
  }
  std::vector<Element> out;
  if (!names.empty()) {
    const Workspace& ws = ctx.workspace();
    for (const auto& raw : split(names, ',')) {
      const std::string name = trim(raw);
      const auto it = ws.elements.find(name);
      if (it == ws.elements.end()) {
        throw UsageError("unknown element '" + name + "'");
      }
      if (algebra_atoms(ws, it->second.algebra) != algebra_size) {
        throw UsageError("element '" + name + "' lives in a " +
                         std::to_string(algebra_atoms(ws, it->second.algebra)) +
                         "-atom algebra, expected " + std::to_string(algebra_size));
      }
      out.push_back(element(ws, name));
    }
  } else if (!atoms.empty()) {
    for (const auto& group : index_groups(atoms, "--atoms")) {
      for (std::size_t a : group) {
        if (a >= algebra_size) {
          throw UsageError("--atoms: atom " + std::to_string(a) + " out of range for " +
                           std::to_string(algebra_size) + " atoms");
        }
      }
      out.push_back(Element::of(group));
    }
  }
  return out;
}

Filtration filtration_arg(Context& ctx, const std::string& name) {
  if (name.empty()) {
    throw UsageError("--filtration is required");
  }
  const Workspace& ws = ctx.workspace();
  if (!ws.filtrations.contains(name)) {
    throw UsageError("unknown filtration '" + name + "'");
  }
  return filtration(ws, name);
}

IndexSet gamma_arg(const std::string& text, const Filtration& f, const std::string& what) {
  const IndexSet g(index_list(text, what));
  for (std::size_t i : g) {
    if (i >= f.length()) {
      throw UsageError(what + ": step " + std::to_string(i) + " out of range for a filtration of length " +
                       std::to_string(f.length()));
    }
  }
  return g;
}

void check(bool ok, const std::string& what) {
  if (!ok) {
    throw std::logic_error("self-check failed: " + what);
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    throw UsageError("cannot write " + path);
  }
}

// --- subcommands ----------------------------------------------------------

// P(x) = 0 iff lower ≤ x_k ≤ upper, row by row over 0/1 assignments.
bool interval_form_holds(const BoolPoly& p, std::size_t k, const Elimination& e) {
  for (std::uint64_t row = 0; row < p.rows(); ++row) {
    const bool bit = (row >> k) & 1u;
    const std::uint64_t low_mask = (std::uint64_t{1} << k) - 1;
    const std::uint64_t rest = (row & low_mask) | ((row >> (k + 1)) << k);
    const bool sandwiched = (!e.lower.at(rest) || bit) && (!bit || e.upper.at(rest));
    if (!p.at(row) != sandwiched) {
      return false;
    }
  }
  return true;
}

struct EliminateArgs {
  std::string poly;
  std::size_t var = 0;
  std::optional<std::size_t> arity;
};

Report eliminate_cmd(Context& ctx, const EliminateArgs& a) {
  const BoolPoly p = poly_arg(ctx, a.poly, a.arity);
  if (a.var < 1 || a.var > p.arity()) {
    throw UsageError("--var must name one of x1..x" + std::to_string(p.arity()));
  }
  const std::size_t k = a.var - 1;
  const auto e = eliminate(p, k);
  check(interval_form_holds(p, k, e), "elimination disagrees with the polynomial");
  // The interval ends keep the names of the remaining variables.
  std::vector<std::string> names;
  for (std::size_t v = 1; v <= p.arity(); ++v) {
    if (v != a.var) {
      names.push_back("x" + std::to_string(v));
    }
  }
  Report r;
  r.outcome = "ok";
  r.add("poly", format_dnf(p));
  r.add("var", "x" + std::to_string(a.var));
  r.add("p_minus", format_dnf(e.lower, names));
  r.add("p_plus", format_dnf(e.upper, names));
  return r;
}

ojson diagram_json(const Diagram& d) {
  return ojson{{"atoms", d.top.atom_count()},
               {"a", d.a.block_lists()},
               {"s", d.s.block_lists()},
               {"r", d.r.block_lists()}};
}

struct PushoutArgs {
  std::string amalgam;
  std::string spec_out;
};

Report pushout_cmd(Context& ctx, const PushoutArgs& a) {
  const Workspace& ws = ctx.workspace();
  const auto it = ws.amalgams.find(a.amalgam);
  if (it == ws.amalgams.end()) {
    throw UsageError("unknown amalgam '" + a.amalgam + "'");
  }
  const AmalgamInput input = to_amalgam_input(it->second);
  const Amalgam am = amalgamate(input);
  const Diagram d = am.diagram(input);
  check(verify_pushout(d).ok(), "amalgam is not a push-out");
  Report r;
  r.outcome = "ok";
  r.add("amalgam", a.amalgam);
  r.add("atoms", am.algebra.atom_count());
  ojson pairs = ojson::array();
  for (const auto& [x, y] : am.atom_pairs) {
    pairs.push_back({x, y});
  }
  r.add("atom_pairs", pairs);
  r.add("embed_a", am.embed_a.dual());
  r.add("embed_s", am.embed_s.dual());
  r.add("diagram", diagram_json(d));
  if (!a.spec_out.empty()) {
    Workspace out;
    out.algebras[a.amalgam + "_pushout"] = am.algebra.atom_count();
    out.diagrams[a.amalgam] = DiagramSpec{am.algebra.atom_count(), std::nullopt, d.a.block_lists(),
                                          d.s.block_lists(), d.r.block_lists()};
    write_file(a.spec_out, emit_workspace(out));
  }
  return r;
}

Report verify_pushout_cmd(Context& ctx, const std::string& name) {
  const Workspace& ws = ctx.workspace();
  const auto it = ws.diagrams.find(name);
  if (it == ws.diagrams.end()) {
    throw UsageError("unknown diagram '" + name + "'");
  }
  const auto report = verify_pushout(to_diagram(it->second));
  Report r;
  r.outcome = report.ok() ? "pass" : "fail";
  r.add("diagram", name);
  ojson v = ojson::array();
  for (auto x : report.violations) {
    v.push_back(to_string(x));
  }
  r.add("violations", v);
  return r;
}

void filtration_summary(Report& r, const Filtration& f) {
  std::vector<std::size_t> stages;
  ojson supports = ojson::array();
  for (std::size_t i = 0; i <= f.length(); ++i) {
    stages.push_back(f.atoms_at(i));
  }
  for (std::size_t i = 0; i < f.length(); ++i) {
    supports.push_back(f.support(i).indices());
  }
  r.add("length", f.length());
  r.add("stage_atoms", stages);
  r.add("supports", supports);
}

struct BuildArgs {
  std::optional<std::size_t> free;
  bool random = false;
  std::string schedule;
  std::size_t length = 4;
  std::size_t max_s_atoms = 3;
  std::string name = "built";
  std::string spec_out;
};

Report build_filtration_cmd(Context& ctx, const BuildArgs& a) {
  const int modes = (a.free ? 1 : 0) + (a.random ? 1 : 0) + (a.schedule.empty() ? 0 : 1);
  if (modes != 1) {
    throw UsageError("choose exactly one of --free, --random or --schedule");
  }
  const std::size_t max_atoms = ctx.globals.max_atoms;
  Report r;
  BuildResult built;
  if (a.free) {
    if (*a.free >= 64 || (std::size_t{1} << *a.free) > max_atoms) {
      throw UsageError("--free " + std::to_string(*a.free) + " needs more than " +
                       std::to_string(max_atoms) + " atoms");
    }
    built.filtration = build_free_filtration(*a.free);
    r.add("mode", "free");
  } else if (a.random) {
    RandomFiltrationOptions opt;
    opt.length = a.length;
    opt.max_s_atoms = a.max_s_atoms;
    opt.max_atoms = max_atoms;
    opt.seed = ctx.globals.seed;
    built = build_random_filtration(opt);
    r.add("mode", "random");
  } else {
    const Workspace& ws = ctx.workspace();
    std::vector<AmalgamInput> schedule;
    for (const auto& raw : split(a.schedule, ',')) {
      const std::string name = trim(raw);
      const auto it = ws.amalgams.find(name);
      if (it == ws.amalgams.end()) {
        throw UsageError("unknown amalgam '" + name + "'");
      }
      schedule.push_back(to_amalgam_input(it->second));
    }
    built = build_filtration(schedule, max_atoms);
    r.add("mode", "schedule");
  }
  const Filtration& f = built.filtration;
  check(verify_filtration(f).ok(), "built filtration does not verify");
  r.outcome = "ok";
  filtration_summary(r, f);
  r.add("final_atoms", f.final_atoms());
  ojson rejected = ojson::array();
  for (const auto& rej : built.rejected) {
    rejected.push_back(ojson{{"step", rej.step}, {"atoms", rej.atoms}});
  }
  r.add("rejected", rejected);
  if (!a.spec_out.empty()) {
    Workspace out;
    out.filtrations[a.name] = describe(f);
    const std::string text = emit_workspace(out);
    // The written file must load back to the same filtration.
    const auto reread = parse_workspace(text, max_atoms);
    check(reread == out, "emitted filtration does not round-trip");
    write_file(a.spec_out, text);
    r.add("spec_out", a.spec_out);
  }
  return r;
}

Report verify_filtration_cmd(Context& ctx, const std::string& name) {
  const Filtration f = filtration_arg(ctx, name);
  const auto report = verify_filtration(f);
  Report r;
  r.outcome = report.ok() ? "pass" : "fail";
  r.add("filtration", name);
  filtration_summary(r, f);
  ojson v = ojson::array();
  for (const auto& x : report.violations) {
    ojson item;
    item["step"] = x.step ? ojson(*x.step) : ojson(nullptr);
    item["kind"] = to_string(x.kind);
    item["detail"] = x.detail;
    v.push_back(std::move(item));
  }
  if (!report.ok()) {
    const auto& first = report.violations.front();
    r.add("first_failing_step", first.step ? ojson(*first.step) : ojson(nullptr));
  }
  r.add("violations", v);
  return r;
}

struct SkeletonArgs {
  std::string filtration;
  std::string gamma;
  std::string index_set;
};

Report skeleton_cmd(Context& ctx, const SkeletonArgs& a) {
  const Filtration f = filtration_arg(ctx, a.filtration);
  std::string text = a.gamma;
  if (!a.index_set.empty()) {
    const auto& sets = ctx.workspace().index_sets;
    const auto it = sets.find(a.index_set);
    if (it == sets.end()) {
      throw UsageError("unknown index set '" + a.index_set + "'");
    }
    std::vector<std::string> parts;
    for (std::size_t i : it->second) {
      parts.push_back(std::to_string(i));
    }
    text.clear();
    for (std::size_t i = 0; i < parts.size(); ++i) {
      text += (i ? "," : "") + parts[i];
    }
  }
  const IndexSet gamma = gamma_arg(text, f, "--gamma");
  const auto sk = skeleton(f, gamma);
  Report r;
  r.outcome = "ok";
  r.add("filtration", a.filtration);
  r.add("gamma", gamma.indices());
  r.add("saturated", is_saturated(f, gamma));
  r.add("block_count", sk.block_count());
  r.add("blocks", sk.block_lists());
  return r;
}

struct SaturateArgs {
  std::string filtration;
  std::string elements;
  std::string atoms;
};

Report saturate_cmd(Context& ctx, const SaturateArgs& a) {
  const Filtration f = filtration_arg(ctx, a.filtration);
  const auto h = elements_arg(ctx, a.elements, a.atoms, f.final_atoms());
  const IndexSet gamma = saturate(f, h);
  check(is_saturated(f, gamma), "saturate returned an unsaturated set");
  const auto sk = skeleton(f, gamma);
  for (Element e : h) {
    check(sk.contains(e), "saturated skeleton misses an input element");
  }
  Report r;
  r.outcome = "ok";
  r.add("filtration", a.filtration);
  r.add("elements", atoms_json(h));
  r.add("gamma", gamma.indices());
  r.add("skeleton_blocks", sk.block_count());
  return r;
}

struct BracketArgs {
  std::string filtration;
  std::string poly;
  std::string delta;
  std::string gammas;
  std::string elements;
  std::string atoms;
};

Report bracket_solve_cmd(Context& ctx, const BracketArgs& a) {
  const Filtration f = filtration_arg(ctx, a.filtration);
  std::vector<IndexSet> gammas;
  for (const auto& g : split(a.gammas, ';')) {
    gammas.push_back(gamma_arg(g, f, "--gammas"));
  }
  BracketProblem pb{gamma_arg(a.delta, f, "--delta"), gammas,
                    elements_arg(ctx, a.elements, a.atoms, f.final_atoms()),
                    poly_arg(ctx, a.poly, gammas.size())};
  if (pb.elements.size() != pb.gammas.size()) {
    throw UsageError("need one element per index set (" + std::to_string(pb.gammas.size()) + ")");
  }
  const auto result = bracket_solve(f, pb);
  Report r;
  r.add("filtration", a.filtration);
  r.add("poly", format_dnf(pb.poly));
  if (result.solution) {
    const auto& s = *result.solution;
    for (std::size_t i = 0; i < pb.elements.size(); ++i) {
      check(s.lows[i].subset_of(pb.elements[i]) && pb.elements[i].subset_of(s.highs[i]),
            "bracket witness does not sandwich its element");
    }
    check(all_signs_vanish(pb.poly, s.lows, s.highs, f.final_algebra()),
          "bracket witness fails the sign check");
    r.outcome = "found";
    r.add("lows", atoms_json(s.lows));
    r.add("highs", atoms_json(s.highs));
  } else {
    r.outcome = "none";
  }
  r.add("violations", result.violations);
  return r;
}

struct SunflowerArgs {
  std::string sets;
  std::string family;
  bool random = false;
  std::size_t count = 9;
  std::size_t size = 2;
  std::size_t universe = 12;
  std::size_t k = 3;
  std::size_t exhaustive_limit = 24;
};

SetFamily random_family(Rng& rng, std::size_t count, std::size_t size, std::size_t universe) {
  double available = 1;
  for (std::size_t i = 0; i < size; ++i) {
    available = available * static_cast<double>(universe - i) / static_cast<double>(i + 1);
  }
  if (size > universe || available < static_cast<double>(count)) {
    throw UsageError("not enough distinct " + std::to_string(size) + "-sets in a universe of " +
                     std::to_string(universe));
  }
  SetFamily out;
  std::set<FiniteSet> seen;
  std::vector<std::size_t> pool(universe);
  for (std::size_t i = 0; i < universe; ++i) {
    pool[i] = i;
  }
  while (out.size() < count) {
    rng.shuffle(pool);
    FiniteSet s(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
    std::sort(s.begin(), s.end());
    if (seen.insert(s).second) {
      out.push_back(std::move(s));
    }
  }
  return out;
}

Report sunflower_cmd(Context& ctx, const SunflowerArgs& a) {
  const int modes = (a.sets.empty() ? 0 : 1) + (a.family.empty() ? 0 : 1) + (a.random ? 1 : 0);
  if (modes != 1) {
    throw UsageError("choose exactly one of --sets, --family or --random");
  }
  SetFamily family;
  if (!a.sets.empty()) {
    family = index_groups(a.sets, "--sets");
  } else if (!a.family.empty()) {
    const auto& fams = ctx.workspace().families;
    const auto it = fams.find(a.family);
    if (it == fams.end()) {
      throw UsageError("unknown family '" + a.family + "'");
    }
    family = it->second;
  } else {
    Rng rng(ctx.globals.seed);
    family = random_family(rng, a.count, a.size, a.universe);
  }
  const auto result = sunflower(family, a.k, a.exhaustive_limit);
  Report r;
  r.add("family", family);
  r.add("k", a.k);
  r.add("bound_applies", result.bound_applies);
  r.add("exhaustive", result.exhaustive);
  if (result.found) {
    check(is_sunflower(family, *result.found), "sunflower witness does not validate");
    r.outcome = "found";
    r.add("kernel", result.found->kernel);
    r.add("members", result.found->members);
  } else {
    r.outcome = "none";
  }
  return r;
}

struct DichotomyArgs {
  std::optional<std::size_t> chain_demo;
  bool shuffle = false;
  std::string filtration;
  std::string family;
  std::string poly = "x1 & !x2";
  std::optional<std::size_t> threshold;
  std::size_t samples = 2000;
  std::size_t exhaustive_limit = 12;
  std::size_t node_budget = 5'000'000;
};

Report dichotomy_cmd(Context& ctx, const DichotomyArgs& a) {
  Filtration f;
  ElementFamily family;
  Report r;
  if (a.chain_demo) {
    if (!a.filtration.empty() || !a.family.empty()) {
      throw UsageError("--chain-demo replaces --filtration and --family");
    }
    const std::size_t n = *a.chain_demo;
    std::size_t steps = 0;
    while ((std::size_t{1} << steps) < n + 1) {
      ++steps;
    }
    if (n == 0 || n >= 64 || (std::size_t{1} << steps) > ctx.globals.max_atoms) {
      throw UsageError("--chain-demo " + std::to_string(n) + " does not fit in " +
                       std::to_string(ctx.globals.max_atoms) + " atoms");
    }
    f = build_free_filtration(steps);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
      order[i] = i;
    }
    if (a.shuffle) {
      Rng rng(ctx.globals.seed);
      rng.shuffle(order);
    }
    for (std::size_t i : order) {
      family.push_back({Element::from_bits((std::uint64_t{2} << i) - 1)});
    }
    r.add("chain_order", order);
  } else {
    f = filtration_arg(ctx, a.filtration);
    const auto& efs = ctx.workspace().element_families;
    const auto it = efs.find(a.family);
    if (it == efs.end()) {
      throw UsageError("unknown element family '" + a.family + "'");
    }
    if (algebra_atoms(ctx.workspace(), it->second.algebra) != f.final_atoms()) {
      throw UsageError("element family and filtration live in different algebras");
    }
    family = element_family(ctx.workspace(), a.family);
  }
  if (family.empty()) {
    throw UsageError("the element family is empty");
  }
  const BoolPoly p = poly_arg(ctx, a.poly);
  DichotomyOptions opt;
  opt.threshold = a.threshold ? *a.threshold : (a.chain_demo ? (*a.chain_demo + 1) / 2 : 2);
  opt.seed = ctx.globals.seed;
  opt.samples = a.samples;
  opt.exhaustive_limit = a.exhaustive_limit;
  opt.node_budget = a.node_budget;
  const auto rep = dichotomy_scan(f, family, p, opt);
  const FiniteAlgebra alg = f.final_algebra();
  r.add("poly", format_dnf(p));
  r.add("members", family.size());
  r.add("threshold", opt.threshold);
  r.add("mode", rep.exhaustive ? "exhaustive" : "sampling");
  r.add("largest_first", rep.largest_first);
  if (rep.first) {
    check(validate_first(family, p, alg, *rep.first), "first alternative does not validate");
    r.add("first", *rep.first);
  } else {
    r.add("first", nullptr);
  }
  if (rep.second) {
    check(validate_second(family, p, alg, *rep.second), "second alternative does not validate");
    r.add("second", *rep.second);
    r.add("second_overlaps", rep.second_overlaps);
  } else {
    r.add("second", nullptr);
  }
  r.add("shared_r", rep.shared_r ? ojson(rep.shared_r->block_lists()) : ojson(nullptr));
  r.outcome = rep.first || rep.second ? "found" : "none";
  return r;
}

struct ChainNormArgs {
  std::optional<std::size_t> n;
  std::string pattern = "nested";
  std::string chain;
};

Report chain_norm_cmd(Context& ctx, const ChainNormArgs& a) {
  std::vector<Element> chain;
  std::size_t atoms = 0;
  if (!a.chain.empty()) {
    const auto& chains = ctx.workspace().chains;
    const auto it = chains.find(a.chain);
    if (it == chains.end()) {
      throw UsageError("unknown chain '" + a.chain + "'");
    }
    atoms = it->second.atoms;
    for (const auto& s : it->second.sets) {
      chain.push_back(Element::of(s));
    }
    if (a.n && 2 * *a.n != chain.size()) {
      throw UsageError("--n " + std::to_string(*a.n) + " does not match a chain of " +
                       std::to_string(chain.size()) + " sets");
    }
  } else {
    if (!a.n || *a.n == 0) {
      throw UsageError("--n (at least 1) or --chain is required");
    }
    atoms = 2 * *a.n + 1;
    if (atoms > ctx.globals.max_atoms) {
      throw UsageError("--n " + std::to_string(*a.n) + " needs " + std::to_string(atoms) +
                       " atoms, above the limit of " + std::to_string(ctx.globals.max_atoms));
    }
    chain = standard_chain(*a.n);
  }
  const std::size_t n = chain.size() / 2;
  std::vector<std::size_t> perm;
  if (a.pattern == "nested" || a.pattern == "interleaved") {
    perm = pairing_permutation(a.pattern == "nested" ? Pairing::nested : Pairing::interleaved, n);
  } else {
    perm = index_list(a.pattern, "--pattern");
  }
  const Rational norm = chain_norm(FiniteAlgebra(atoms), chain, perm);
  Report r;
  r.outcome = "ok";
  r.add("n", n);
  r.add("atoms", atoms);
  r.add("pattern", a.pattern == "nested" || a.pattern == "interleaved" ? a.pattern : "explicit");
  r.add("permutation", perm);
  r.add("norm", to_string(norm));
  return r;
}

// Small, fast versions of the library's central identities.
Report selftest_cmd(Context& ctx) {
  std::vector<std::pair<std::string, bool>> checks;

  bool elim = true;
  for (std::uint64_t table = 0; table < 256; ++table) {
    const auto p = BoolPoly::from_bits(3, table);
    for (std::size_t k = 0; k < 3; ++k) {
      elim = elim && interval_form_holds(p, k, eliminate(p, k));
    }
  }
  checks.emplace_back("elimination", elim);

  bool norms = true;
  for (std::size_t n = 1; n <= 4; ++n) {
    const FiniteAlgebra alg(2 * n + 1);
    const auto chain = standard_chain(n);
    norms = norms && chain_norm(alg, chain, pairing_permutation(Pairing::nested, n)) == Rational(1) &&
            chain_norm(alg, chain, pairing_permutation(Pairing::interleaved, n)) ==
                Rational(static_cast<std::int64_t>(n));
  }
  checks.emplace_back("chain_norms", norms);

  const AmalgamInput free_product{2, 2, SubalgebraPartition::trivial(2), SubalgebraPartition::trivial(2), {0}};
  const auto am = amalgamate(free_product);
  checks.emplace_back("pushout", am.algebra.atom_count() == 4 && verify_pushout(am.diagram(free_product)).ok());

  bool filtrations = true;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RandomFiltrationOptions opt;
    opt.seed = ctx.globals.seed + seed;
    opt.max_atoms = std::min<std::size_t>(ctx.globals.max_atoms, 16);
    filtrations = filtrations && verify_filtration(build_random_filtration(opt).filtration).ok();
  }
  checks.emplace_back("filtrations", filtrations);

  bool flowers = true;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(ctx.globals.seed + seed);
    const auto family = random_family(rng, 9, 2, 10);
    const auto found = sunflower(family, 3);
    flowers = flowers && found.found && is_sunflower(family, *found.found);
  }
  checks.emplace_back("sunflower", flowers);

  Workspace ws;
  ws.algebras["b"] = 4;
  ws.filtrations["free"] = describe(build_free_filtration(2));
  ws.elements["e"] = ElementSpec{"free", {0, 3}};
  const std::string text = emit_workspace(ws);
  checks.emplace_back("workspace_round_trip",
                      parse_workspace(text) == ws && emit_workspace(parse_workspace(text)) == text);

  Report r;
  ojson list = ojson::array();
  bool all = true;
  for (const auto& [name, ok] : checks) {
    list.push_back(ojson{{"name", name}, {"ok", ok}});
    all = all && ok;
  }
  r.outcome = all ? "pass" : "fail";
  r.add("checks", list);
  return r;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite Boolean-algebra toolkit: push-outs, filtrations, elimination, chain norms",
               "tsig"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", "tsig 0.1.0");

  Globals g;
  app.add_option("--input", g.input, "Workspace file (JSON)");
  app.add_option("--output", g.output, "Write the report here instead of stdout");
  app.add_option("--seed", g.seed, "Seed for every random choice");
  app.add_option("--max-atoms", g.max_atoms, "Largest algebra any step may build")
      ->envname("TIGHTSIGMA_MAX_ATOMS")
      ->check(CLI::Range(std::size_t{1}, kMaxRepresentableAtoms));
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--timing", g.timing, "Add wall-clock time to the report");

  EliminateArgs elim;
  auto* s_elim = app.add_subcommand("eliminate", "Solve P(x)=0 for one variable as an interval");
  s_elim->add_option("--poly", elim.poly, "Term, or a polynomial name from --input")->required();
  s_elim->add_option("--var", elim.var, "Variable index, 1-based")->required();
  s_elim->add_option("--arity", elim.arity, "Arity (default: largest variable used)");

  PushoutArgs po;
  auto* s_po = app.add_subcommand("pushout", "Amalgamate a named amalgam input");
  s_po->add_option("--amalgam", po.amalgam)->required();
  s_po->add_option("--spec-out", po.spec_out, "Write the resulting diagram as a workspace");

  std::string diagram;
  auto* s_vpo = app.add_subcommand("verify-pushout", "Check that a named square is a push-out");
  s_vpo->add_option("--diagram", diagram)->required();

  BuildArgs build;
  auto* s_build = app.add_subcommand("build-filtration", "Build a free, random or scheduled filtration");
  s_build->add_option("--free", build.free, "Free algebra on this many generators");
  s_build->add_flag("--random", build.random, "Random amalgams (uses --seed)");
  s_build->add_option("--schedule", build.schedule, "Comma-separated amalgam names from --input");
  s_build->add_option("--length", build.length, "Steps for --random");
  s_build->add_option("--max-s-atoms", build.max_s_atoms, "Largest S for --random");
  s_build->add_option("--name", build.name, "Filtration name in --spec-out");
  s_build->add_option("--spec-out", build.spec_out, "Write the filtration as a workspace");

  std::string vf_name;
  auto* s_vf = app.add_subcommand("verify-filtration", "Check every step of a named filtration");
  s_vf->add_option("--filtration", vf_name)->required();

  SkeletonArgs sk;
  auto* s_sk = app.add_subcommand("skeleton", "Subalgebra generated by the steps in an index set");
  s_sk->add_option("--filtration", sk.filtration)->required();
  auto* sk_gamma = s_sk->add_option("--gamma", sk.gamma, "Comma-separated step indices");
  s_sk->add_option("--index-set", sk.index_set, "Named index set from --input")->excludes(sk_gamma);

  SaturateArgs sat;
  auto* s_sat = app.add_subcommand("saturate", "Smallest saturated index set covering elements");
  s_sat->add_option("--filtration", sat.filtration)->required();
  s_sat->add_option("--elements", sat.elements, "Comma-separated element names");
  s_sat->add_option("--atoms", sat.atoms, "Inline elements: atoms per element, ';' between elements");

  BracketArgs br;
  auto* s_br = app.add_subcommand("bracket-solve", "Find separating brackets for P(a)=0");
  s_br->add_option("--filtration", br.filtration)->required();
  s_br->add_option("--poly", br.poly)->required();
  s_br->add_option("--delta", br.delta, "Common index set");
  s_br->add_option("--gammas", br.gammas, "Index sets per variable, ';' between them")->required();
  s_br->add_option("--elements", br.elements, "Comma-separated element names");
  s_br->add_option("--atoms", br.atoms, "Inline elements: atoms per element, ';' between elements");

  SunflowerArgs sf;
  auto* s_sf = app.add_subcommand("sunflower", "Extract a sunflower (delta-system)");
  s_sf->add_option("--sets", sf.sets, "Inline family, e.g. \"1,2;1,3\"");
  s_sf->add_option("--family", sf.family, "Named family from --input");
  s_sf->add_flag("--random", sf.random, "Random family of distinct sets (uses --seed)");
  s_sf->add_option("--count", sf.count, "Sets in a random family");
  s_sf->add_option("--size", sf.size, "Set size in a random family");
  s_sf->add_option("--universe", sf.universe, "Universe size for a random family");
  s_sf->add_option("--k", sf.k, "Petals wanted");
  s_sf->add_option("--exhaustive-limit", sf.exhaustive_limit, "Largest family searched exhaustively");

  DichotomyArgs dc;
  auto* s_dc = app.add_subcommand("dichotomy", "Independent subfamily or shared-bracket split");
  s_dc->add_option("--chain-demo", dc.chain_demo, "Use an increasing chain of N elements");
  s_dc->add_flag("--shuffle", dc.shuffle, "Shuffle the chain order (uses --seed)");
  s_dc->add_option("--filtration", dc.filtration);
  s_dc->add_option("--family", dc.family, "Named element family from --input");
  s_dc->add_option("--poly", dc.poly, "Term (default x1 & !x2)");
  s_dc->add_option("--threshold", dc.threshold, "Size a witness must reach");
  s_dc->add_option("--samples", dc.samples, "Zero samples in sampling mode");
  s_dc->add_option("--exhaustive-limit", dc.exhaustive_limit, "Largest family scanned exhaustively");
  s_dc->add_option("--node-budget", dc.node_budget, "Search nodes allowed for the split");

  ChainNormArgs cn;
  auto* s_cn = app.add_subcommand("chain-norm", "Exact sup-norm of a paired chain sum");
  s_cn->add_option("--n", cn.n, "Pairs in the standard chain");
  s_cn->add_option("--pattern", cn.pattern, "nested, interleaved, or an explicit permutation");
  s_cn->add_option("--chain", cn.chain, "Named chain from --input");

  auto* s_self = app.add_subcommand("selftest", "Run quick internal consistency checks");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  Context ctx(g);
  Report report;
  try {
    if (s_elim->parsed()) {
      report = eliminate_cmd(ctx, elim);
    } else if (s_po->parsed()) {
      report = pushout_cmd(ctx, po);
    } else if (s_vpo->parsed()) {
      report = verify_pushout_cmd(ctx, diagram);
    } else if (s_build->parsed()) {
      report = build_filtration_cmd(ctx, build);
    } else if (s_vf->parsed()) {
      report = verify_filtration_cmd(ctx, vf_name);
    } else if (s_sk->parsed()) {
      report = skeleton_cmd(ctx, sk);
    } else if (s_sat->parsed()) {
      report = saturate_cmd(ctx, sat);
    } else if (s_br->parsed()) {
      report = bracket_solve_cmd(ctx, br);
    } else if (s_sf->parsed()) {
      report = sunflower_cmd(ctx, sf);
    } else if (s_dc->parsed()) {
      report = dichotomy_cmd(ctx, dc);
    } else if (s_cn->parsed()) {
      report = chain_norm_cmd(ctx, cn);
    } else if (s_self->parsed()) {
      report = selftest_cmd(ctx);
    }
  } catch (const UsageError& e) {
    err << "tsig: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SpecError& e) {
    err << "tsig: " << (g.input.empty() ? "" : g.input + ": ") << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "tsig: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::logic_error& e) {
    err << "tsig: internal error: " << e.what() << "\n";
    return kExitNegative;
  }

  report.command = echo(args);
  report.seed = g.seed;
  if (g.timing) {
    report.milliseconds =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  const std::string text = render(report, g.format == "json" ? Format::json : Format::text);
  if (g.output.empty()) {
    out << text;
  } else {
    try {
      write_file(g.output, text);
    } catch (const UsageError& e) {
      err << "tsig: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  return report.success() ? kExitOk : kExitNegative;
}

} // namespace tightsigma::cli
