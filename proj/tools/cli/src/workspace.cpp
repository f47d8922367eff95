#include "tightsigma/cli/workspace.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tightsigma/error.hpp"
#include "tightsigma/term.hpp"

namespace tightsigma::cli {

using nlohmann::json;

namespace {

std::string child(const std::string& path, const std::string& key) {
  std::string escaped;
  for (char c : key) {
    if (c == '~') {
      escaped += "~0";
    } else if (c == '/') {
      escaped += "~1";
    } else {
      escaped += c;
    }
  }
  return path + "/" + escaped;
}

std::string child(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object()) {
    throw SpecError(path, "expected an object");
  }
  return j;
}

const json& require_array(const json& j, const std::string& path) {
  if (!j.is_array()) {
    throw SpecError(path, "expected an array");
  }
  return j;
}

void allow_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : keys) {
      known = known || key == k;
    }
    if (!known) {
      throw SpecError(child(path, key), "unknown key");
    }
  }
}

const json& field(const json& j, const std::string& path, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw SpecError(child(path, key), "missing required key");
  }
  return *it;
}

std::size_t as_index(const json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw SpecError(path, "expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) {
    throw SpecError(path, "expected a string");
  }
  return j.get<std::string>();
}

std::vector<std::size_t> as_indices(const json& j, const std::string& path) {
  require_array(j, path);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(as_index(j[i], child(path, i)));
  }
  return out;
}

std::vector<std::size_t> as_atoms(const json& j, const std::string& path, std::size_t atoms) {
  auto out = as_indices(j, path);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] >= atoms) {
      throw SpecError(child(path, i), "atom " + std::to_string(out[i]) + " out of range for " +
                                          std::to_string(atoms) + " atoms");
    }
  }
  return out;
}

std::size_t as_atom_count(const json& j, const std::string& path, std::size_t max_atoms) {
  const std::size_t n = as_index(j, path);
  if (n == 0) {
    throw SpecError(path, "an algebra needs at least one atom");
  }
  if (n > max_atoms) {
    throw SpecError(path, std::to_string(n) + " atoms exceeds the limit of " +
                              std::to_string(max_atoms));
  }
  return n;
}

// Blocks must partition the atoms; range errors point at the offending entry.
Blocks as_blocks(const json& j, const std::string& path, std::size_t atoms) {
  require_array(j, path);
  Blocks out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(as_atoms(j[i], child(path, i), atoms));
  }
  try {
    SubalgebraPartition::from_blocks(atoms, out);
  } catch (const Error& e) {
    throw SpecError(path, e.what());
  }
  return out;
}

AmalgamSpec parse_amalgam(const json& j, const std::string& path, std::size_t max_atoms,
                          std::optional<std::size_t> a_default) {
  require_object(j, path);
  allow_keys(j, path, {"a_atoms", "s_atoms", "r_in_a", "r_in_s", "matching"});
  AmalgamSpec spec;
  if (a_default && !j.contains("a_atoms")) {
    spec.a_atoms = *a_default;
  } else {
    spec.a_atoms = as_atom_count(field(j, path, "a_atoms"), child(path, "a_atoms"), max_atoms);
  }
  if (a_default && spec.a_atoms != *a_default) {
    throw SpecError(child(path, "a_atoms"), "expected " + std::to_string(*a_default) +
                                                " atoms (the current algebra)");
  }
  spec.s_atoms = as_atom_count(field(j, path, "s_atoms"), child(path, "s_atoms"), max_atoms);
  spec.r_in_a = as_blocks(field(j, path, "r_in_a"), child(path, "r_in_a"), spec.a_atoms);
  spec.r_in_s = as_blocks(field(j, path, "r_in_s"), child(path, "r_in_s"), spec.s_atoms);
  spec.matching = as_indices(field(j, path, "matching"), child(path, "matching"));
  const auto input = [&] {
    try {
      return to_amalgam_input(spec);
    } catch (const Error& e) {
      throw SpecError(path, e.what());
    }
  }();
  try {
    validate(input);
  } catch (const Error& e) {
    throw SpecError(child(path, "matching"), e.what());
  }
  const std::size_t out_atoms = amalgam_atom_count(input);
  if (out_atoms > max_atoms) {
    throw SpecError(path, "amalgam has " + std::to_string(out_atoms) +
                              " atoms, above the limit of " + std::to_string(max_atoms));
  }
  return spec;
}

DiagramSpec parse_diagram(const json& j, const std::string& path, std::size_t max_atoms) {
  require_object(j, path);
  allow_keys(j, path, {"atoms", "top", "a", "s", "r"});
  DiagramSpec spec;
  spec.atoms = as_atom_count(field(j, path, "atoms"), child(path, "atoms"), max_atoms);
  if (j.contains("top")) {
    spec.top = as_blocks(j["top"], child(path, "top"), spec.atoms);
  }
  spec.a = as_blocks(field(j, path, "a"), child(path, "a"), spec.atoms);
  spec.s = as_blocks(field(j, path, "s"), child(path, "s"), spec.atoms);
  spec.r = as_blocks(field(j, path, "r"), child(path, "r"), spec.atoms);
  return spec;
}

ExplicitStepSpec parse_explicit(const json& j, const std::string& path, std::size_t current,
                                std::size_t max_atoms) {
  require_object(j, path);
  allow_keys(j, path, {"next_atoms", "embedding", "r", "s"});
  ExplicitStepSpec spec;
  spec.next_atoms = as_atom_count(field(j, path, "next_atoms"), child(path, "next_atoms"), max_atoms);
  spec.embedding = as_atoms(field(j, path, "embedding"), child(path, "embedding"), current);
  if (spec.embedding.size() != spec.next_atoms) {
    throw SpecError(child(path, "embedding"), "needs one entry per atom of the next algebra (" +
                                                  std::to_string(spec.next_atoms) + ")");
  }
  spec.r = as_blocks(field(j, path, "r"), child(path, "r"), current);
  spec.s = as_blocks(field(j, path, "s"), child(path, "s"), spec.next_atoms);
  return spec;
}

void push(Filtration& f, const StepSpec& step) {
  std::optional<IndexSet> support;
  if (step.support) {
    support = IndexSet(*step.support);
  }
  if (const auto* a = std::get_if<AmalgamSpec>(&step.body)) {
    f.push_amalgam(to_amalgam_input(*a), support);
  } else {
    const auto& e = std::get<ExplicitStepSpec>(step.body);
    f.push_step(FiltrationStep{Morphism(f.final_atoms(), e.embedding),
                               SubalgebraPartition::from_blocks(f.final_atoms(), e.r),
                               SubalgebraPartition::from_blocks(e.next_atoms, e.s), std::nullopt},
                support);
  }
}

FiltrationSpec parse_filtration(const json& j, const std::string& path, std::size_t max_atoms) {
  require_object(j, path);
  allow_keys(j, path, {"steps"});
  const std::string steps_path = child(path, "steps");
  const json& steps = require_array(field(j, path, "steps"), steps_path);
  FiltrationSpec spec;
  Filtration f;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string sp = child(steps_path, i);
    require_object(steps[i], sp);
    allow_keys(steps[i], sp, {"amalgam", "explicit", "support"});
    StepSpec step;
    const bool is_amalgam = steps[i].contains("amalgam");
    if (is_amalgam == steps[i].contains("explicit")) {
      throw SpecError(sp, "a step needs exactly one of \"amalgam\" or \"explicit\"");
    }
    if (is_amalgam) {
      step.body = parse_amalgam(steps[i]["amalgam"], child(sp, "amalgam"), max_atoms, f.final_atoms());
    } else {
      step.body = parse_explicit(steps[i]["explicit"], child(sp, "explicit"), f.final_atoms(), max_atoms);
    }
    if (steps[i].contains("support")) {
      const auto support = as_indices(steps[i]["support"], child(sp, "support"));
      for (std::size_t k = 0; k < support.size(); ++k) {
        if (support[k] >= i) {
          throw SpecError(child(child(sp, "support"), k), "support must name earlier steps");
        }
      }
      step.support = support;
    }
    try {
      push(f, step);
    } catch (const Error& e) {
      throw SpecError(sp, e.what());
    }
    spec.steps.push_back(std::move(step));
  }
  return spec;
}

json blocks_json(const Blocks& b) { return json(b); }

json amalgam_json(const AmalgamSpec& s) {
  return json{{"a_atoms", s.a_atoms}, {"s_atoms", s.s_atoms}, {"r_in_a", blocks_json(s.r_in_a)},
              {"r_in_s", blocks_json(s.r_in_s)}, {"matching", s.matching}};
}

std::size_t stage_atoms(const FiltrationSpec& spec) {
  std::size_t atoms = 1;
  for (const auto& step : spec.steps) {
    if (const auto* a = std::get_if<AmalgamSpec>(&step.body)) {
      atoms = amalgam_atom_count(to_amalgam_input(*a));
    } else {
      atoms = std::get<ExplicitStepSpec>(step.body).next_atoms;
    }
  }
  return atoms;
}

} // namespace

Workspace parse_workspace(std::string_view text, std::size_t max_atoms) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    // Byte offsets count from 1 and point just past the offending character.
    const std::size_t at = e.byte == 0 ? 0 : std::min(e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < at; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string message = e.what();
    if (const auto colon = message.rfind(": "); colon != std::string::npos) {
      message = message.substr(colon + 2);
    }
    throw SpecError("line " + std::to_string(line) + ", column " + std::to_string(column), message);
  }

  require_object(root, "");
  allow_keys(root, "", {"description", "algebras", "elements", "subalgebras", "polynomials",
                        "amalgams", "diagrams", "filtrations", "families", "index_sets",
                        "element_families", "chains"});

  Workspace ws;
  std::set<std::string> names;
  const auto section = [&](const char* key, auto&& each) {
    if (!root.contains(key)) {
      return;
    }
    const std::string path = child("", key);
    require_object(root[key], path);
    for (const auto& [name, value] : root[key].items()) {
      if (!names.insert(name).second) {
        throw SpecError(child(path, name), "name \"" + name + "\" is already used");
      }
      each(name, value, child(path, name));
    }
  };
  // Atom counts available to elements: algebras and filtrations' final stages.
  std::map<std::string, std::size_t> carriers;
  const auto carrier = [&](const json& j, const std::string& path) {
    const std::string name = as_string(j, path);
    const auto it = carriers.find(name);
    if (it == carriers.end()) {
      throw SpecError(path, "unknown algebra \"" + name + "\"");
    }
    return std::pair{name, it->second};
  };

  if (root.contains("description")) {
    ws.description = as_string(root["description"], "/description");
  }
  section("algebras", [&](const std::string& name, const json& v, const std::string& path) {
    ws.algebras[name] = carriers[name] = as_atom_count(v, path, max_atoms);
  });
  section("polynomials", [&](const std::string& name, const json& v, const std::string& path) {
    const std::string term = as_string(v, path);
    try {
      parse_term(term);
    } catch (const Error& e) {
      throw SpecError(path, e.what());
    }
    ws.polynomials[name] = term;
  });
  section("families", [&](const std::string& name, const json& v, const std::string& path) {
    require_array(v, path);
    std::vector<std::vector<std::size_t>> family;
    for (std::size_t i = 0; i < v.size(); ++i) {
      family.push_back(as_indices(v[i], child(path, i)));
    }
    ws.families[name] = std::move(family);
  });
  section("index_sets", [&](const std::string& name, const json& v, const std::string& path) {
    ws.index_sets[name] = as_indices(v, path);
  });
  section("amalgams", [&](const std::string& name, const json& v, const std::string& path) {
    ws.amalgams[name] = parse_amalgam(v, path, max_atoms, std::nullopt);
  });
  section("diagrams", [&](const std::string& name, const json& v, const std::string& path) {
    ws.diagrams[name] = parse_diagram(v, path, max_atoms);
  });
  section("filtrations", [&](const std::string& name, const json& v, const std::string& path) {
    auto spec = parse_filtration(v, path, max_atoms);
    carriers[name] = stage_atoms(spec);
    ws.filtrations[name] = std::move(spec);
  });
  section("chains", [&](const std::string& name, const json& v, const std::string& path) {
    require_object(v, path);
    allow_keys(v, path, {"atoms", "sets"});
    ChainSpec spec;
    spec.atoms = as_atom_count(field(v, path, "atoms"), child(path, "atoms"), max_atoms);
    const std::string sets_path = child(path, "sets");
    require_array(field(v, path, "sets"), sets_path);
    for (std::size_t i = 0; i < v["sets"].size(); ++i) {
      spec.sets.push_back(as_atoms(v["sets"][i], child(sets_path, i), spec.atoms));
    }
    ws.chains[name] = std::move(spec);
  });
  section("elements", [&](const std::string& name, const json& v, const std::string& path) {
    require_object(v, path);
    allow_keys(v, path, {"algebra", "atoms"});
    const auto [alg, atoms] = carrier(field(v, path, "algebra"), child(path, "algebra"));
    ws.elements[name] = ElementSpec{alg, as_atoms(field(v, path, "atoms"), child(path, "atoms"), atoms)};
  });
  section("subalgebras", [&](const std::string& name, const json& v, const std::string& path) {
    require_object(v, path);
    allow_keys(v, path, {"algebra", "blocks"});
    const auto [alg, atoms] = carrier(field(v, path, "algebra"), child(path, "algebra"));
    ws.subalgebras[name] =
        SubalgebraSpec{alg, as_blocks(field(v, path, "blocks"), child(path, "blocks"), atoms)};
  });
  section("element_families", [&](const std::string& name, const json& v, const std::string& path) {
    require_object(v, path);
    allow_keys(v, path, {"algebra", "members"});
    const auto [alg, atoms] = carrier(field(v, path, "algebra"), child(path, "algebra"));
    ElementFamilySpec spec{alg, {}};
    const std::string mp = child(path, "members");
    const json& members = require_array(field(v, path, "members"), mp);
    std::optional<std::size_t> arity;
    for (std::size_t i = 0; i < members.size(); ++i) {
      const std::string ip = child(mp, i);
      require_array(members[i], ip);
      if (arity && members[i].size() != *arity) {
        throw SpecError(ip, "every member needs " + std::to_string(*arity) + " elements");
      }
      arity = members[i].size();
      std::vector<std::vector<std::size_t>> tuple;
      for (std::size_t k = 0; k < members[i].size(); ++k) {
        tuple.push_back(as_atoms(members[i][k], child(ip, k), atoms));
      }
      spec.members.push_back(std::move(tuple));
    }
    ws.element_families[name] = std::move(spec);
  });
  return ws;
}

Workspace load_workspace(const std::string& path, std::size_t max_atoms) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw SpecError(path, "cannot open file");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_workspace(text.str(), max_atoms);
}

std::string emit_workspace(const Workspace& ws) {
  json root = json::object();
  if (ws.description) {
    root["description"] = *ws.description;
  }
  for (const auto& [name, atoms] : ws.algebras) {
    root["algebras"][name] = atoms;
  }
  for (const auto& [name, e] : ws.elements) {
    root["elements"][name] = {{"algebra", e.algebra}, {"atoms", e.atoms}};
  }
  for (const auto& [name, s] : ws.subalgebras) {
    root["subalgebras"][name] = {{"algebra", s.algebra}, {"blocks", blocks_json(s.blocks)}};
  }
  for (const auto& [name, term] : ws.polynomials) {
    root["polynomials"][name] = term;
  }
  for (const auto& [name, a] : ws.amalgams) {
    root["amalgams"][name] = amalgam_json(a);
  }
  for (const auto& [name, d] : ws.diagrams) {
    json& out = root["diagrams"][name];
    out = {{"atoms", d.atoms}, {"a", blocks_json(d.a)}, {"s", blocks_json(d.s)}, {"r", blocks_json(d.r)}};
    if (d.top) {
      out["top"] = blocks_json(*d.top);
    }
  }
  for (const auto& [name, f] : ws.filtrations) {
    json steps = json::array();
    for (const auto& step : f.steps) {
      json s;
      if (const auto* a = std::get_if<AmalgamSpec>(&step.body)) {
        s["amalgam"] = amalgam_json(*a);
      } else {
        const auto& e = std::get<ExplicitStepSpec>(step.body);
        s["explicit"] = {{"next_atoms", e.next_atoms}, {"embedding", e.embedding},
                         {"r", blocks_json(e.r)}, {"s", blocks_json(e.s)}};
      }
      if (step.support) {
        s["support"] = *step.support;
      }
      steps.push_back(std::move(s));
    }
    root["filtrations"][name] = {{"steps", std::move(steps)}};
  }
  for (const auto& [name, family] : ws.families) {
    root["families"][name] = family;
  }
  for (const auto& [name, set] : ws.index_sets) {
    root["index_sets"][name] = set;
  }
  for (const auto& [name, ef] : ws.element_families) {
    root["element_families"][name] = {{"algebra", ef.algebra}, {"members", ef.members}};
  }
  for (const auto& [name, c] : ws.chains) {
    root["chains"][name] = {{"atoms", c.atoms}, {"sets", c.sets}};
  }
  return root.dump(2) + "\n";
}

AmalgamInput to_amalgam_input(const AmalgamSpec& spec) {
  return AmalgamInput{spec.a_atoms, spec.s_atoms,
                      SubalgebraPartition::from_blocks(spec.a_atoms, spec.r_in_a),
                      SubalgebraPartition::from_blocks(spec.s_atoms, spec.r_in_s), spec.matching};
}

AmalgamSpec from_amalgam_input(const AmalgamInput& input) {
  return AmalgamSpec{input.a_atoms, input.s_atoms, input.r_in_a.block_lists(),
                     input.r_in_s.block_lists(), input.matching};
}

Diagram to_diagram(const DiagramSpec& spec) {
  return Diagram{spec.top ? SubalgebraPartition::from_blocks(spec.atoms, *spec.top)
                          : SubalgebraPartition::discrete(spec.atoms),
                 SubalgebraPartition::from_blocks(spec.atoms, spec.a),
                 SubalgebraPartition::from_blocks(spec.atoms, spec.s),
                 SubalgebraPartition::from_blocks(spec.atoms, spec.r)};
}

Filtration build(const FiltrationSpec& spec) {
  Filtration f;
  for (const auto& step : spec.steps) {
    push(f, step);
  }
  return f;
}

FiltrationSpec describe(const Filtration& f) {
  FiltrationSpec spec;
  for (std::size_t i = 0; i < f.length(); ++i) {
    const auto& step = f.steps()[i];
    StepSpec out;
    if (step.origin) {
      out.body = from_amalgam_input(*step.origin);
    } else {
      out.body = ExplicitStepSpec{step.embedding.target_atoms(), step.embedding.dual(),
                                  step.r.block_lists(), step.s.block_lists()};
    }
    out.support = f.support(i).indices();
    spec.steps.push_back(std::move(out));
  }
  return spec;
}

std::size_t algebra_atoms(const Workspace& ws, const std::string& name) {
  if (const auto it = ws.algebras.find(name); it != ws.algebras.end()) {
    return it->second;
  }
  if (const auto it = ws.filtrations.find(name); it != ws.filtrations.end()) {
    return stage_atoms(it->second);
  }
  throw SpecError(name, "unknown algebra");
}

Element element(const Workspace& ws, const std::string& name) {
  const auto it = ws.elements.find(name);
  if (it == ws.elements.end()) {
    throw SpecError(name, "unknown element");
  }
  return Element::of(it->second.atoms);
}

SubalgebraPartition subalgebra(const Workspace& ws, const std::string& name) {
  const auto it = ws.subalgebras.find(name);
  if (it == ws.subalgebras.end()) {
    throw SpecError(name, "unknown subalgebra");
  }
  return SubalgebraPartition::from_blocks(algebra_atoms(ws, it->second.algebra), it->second.blocks);
}

Filtration filtration(const Workspace& ws, const std::string& name) {
  const auto it = ws.filtrations.find(name);
  if (it == ws.filtrations.end()) {
    throw SpecError(name, "unknown filtration");
  }
  return build(it->second);
}

ElementFamily element_family(const Workspace& ws, const std::string& name) {
  const auto it = ws.element_families.find(name);
  if (it == ws.element_families.end()) {
    throw SpecError(name, "unknown element family");
  }
  ElementFamily family;
  for (const auto& tuple : it->second.members) {
    std::vector<Element> row;
    for (const auto& atoms : tuple) {
      row.push_back(Element::of(atoms));
    }
    family.push_back(std::move(row));
  }
  return family;
}

} // namespace tightsigma::cli
