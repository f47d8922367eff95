#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tightsigma/filtration.hpp"
#include "tightsigma/symmetry.hpp"

namespace tightsigma::cli {

/// A schema or syntax problem in a workspace file. `where` is a JSON
/// pointer for schema problems and "line L, column C" for syntax errors.
class SpecError : public std::runtime_error {
public:
  SpecError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

private:
  std::string where_;
};

using Blocks = std::vector<std::vector<std::size_t>>;

struct ElementSpec {
  std::string algebra; // an algebra or a filtration (its final algebra)
  std::vector<std::size_t> atoms;

  friend bool operator==(const ElementSpec&, const ElementSpec&) = default;
};

struct SubalgebraSpec {
  std::string algebra;
  Blocks blocks;

  friend bool operator==(const SubalgebraSpec&, const SubalgebraSpec&) = default;
};

struct AmalgamSpec {
  std::size_t a_atoms = 0;
  std::size_t s_atoms = 0;
  Blocks r_in_a;
  Blocks r_in_s;
  std::vector<std::size_t> matching;

  friend bool operator==(const AmalgamSpec&, const AmalgamSpec&) = default;
};

struct DiagramSpec {
  std::size_t atoms = 0;
  std::optional<Blocks> top; // discrete when absent
  Blocks a;
  Blocks s;
  Blocks r;

  friend bool operator==(const DiagramSpec&, const DiagramSpec&) = default;
};

struct ExplicitStepSpec {
  std::size_t next_atoms = 0;
  std::vector<std::size_t> embedding; // dual map atoms(B_{α+1}) -> atoms(B_α)
  Blocks r;
  Blocks s;

  friend bool operator==(const ExplicitStepSpec&, const ExplicitStepSpec&) = default;
};

struct StepSpec {
  std::variant<AmalgamSpec, ExplicitStepSpec> body;
  std::optional<std::vector<std::size_t>> support;

  friend bool operator==(const StepSpec&, const StepSpec&) = default;
};

struct FiltrationSpec {
  std::vector<StepSpec> steps;

  friend bool operator==(const FiltrationSpec&, const FiltrationSpec&) = default;
};

struct ElementFamilySpec {
  std::string algebra;
  std::vector<std::vector<std::vector<std::size_t>>> members;

  friend bool operator==(const ElementFamilySpec&, const ElementFamilySpec&) = default;
};

struct ChainSpec {
  std::size_t atoms = 0;
  std::vector<std::vector<std::size_t>> sets;

  friend bool operator==(const ChainSpec&, const ChainSpec&) = default;
};

/* The parsed form of a workspace file. Names are kept in sorted maps, so
 * emitting a workspace is deterministic. */
struct Workspace {
  std::optional<std::string> description;
  std::map<std::string, std::size_t> algebras;
  std::map<std::string, ElementSpec> elements;
  std::map<std::string, SubalgebraSpec> subalgebras;
  std::map<std::string, std::string> polynomials;
  std::map<std::string, AmalgamSpec> amalgams;
  std::map<std::string, DiagramSpec> diagrams;
  std::map<std::string, FiltrationSpec> filtrations;
  std::map<std::string, std::vector<std::vector<std::size_t>>> families;
  std::map<std::string, std::vector<std::size_t>> index_sets;
  std::map<std::string, ElementFamilySpec> element_families;
  std::map<std::string, ChainSpec> chains;

  friend bool operator==(const Workspace&, const Workspace&) = default;
};

/// Parses and fully validates a workspace: every reference resolves, every
/// atom index is in range, every filtration builds within `max_atoms`.
Workspace parse_workspace(std::string_view text, std::size_t max_atoms = kDefaultMaxAtoms);
Workspace load_workspace(const std::string& path, std::size_t max_atoms = kDefaultMaxAtoms);

/// Canonical JSON text (sorted keys, two-space indent, trailing newline).
std::string emit_workspace(const Workspace& ws);

// --- resolved objects ---------------------------------------------------

AmalgamInput to_amalgam_input(const AmalgamSpec& spec);
AmalgamSpec from_amalgam_input(const AmalgamInput& input);
Diagram to_diagram(const DiagramSpec& spec);
Filtration build(const FiltrationSpec& spec);
/// The filtration as a spec; steps built by amalgamation keep that form.
FiltrationSpec describe(const Filtration& f);

/// Atom count of a named algebra or of a named filtration's final algebra.
std::size_t algebra_atoms(const Workspace& ws, const std::string& name);
Element element(const Workspace& ws, const std::string& name);
SubalgebraPartition subalgebra(const Workspace& ws, const std::string& name);
Filtration filtration(const Workspace& ws, const std::string& name);
ElementFamily element_family(const Workspace& ws, const std::string& name);

} // namespace tightsigma::cli
