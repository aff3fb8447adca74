#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sheafwb/hierarchy.hpp"
#include "sheafwb/vset.hpp"

namespace sheafwb {

enum class Axiom {
  Existence,
  Extensionality,
  FoundationVariant,
  Pairing,
  Union,
  Power,
  Comprehension,
  Replacement,
};

std::string to_string(Axiom a);
std::optional<Axiom> parse_axiom(const std::string& name);
std::vector<Axiom> all_axioms();

struct AxiomReport {
  Axiom axiom;
  std::size_t checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Existence, extensionality and the foundation variant are evaluated as sentences at every
// node of the membership sheaf on V_alpha. The constructor axioms take every parameter from
// V_alpha(p), build the explicit witness and check its defining biconditional at p.
AxiomReport axiom_check(Universe& u, std::size_t alpha, Axiom axiom,
                        const HierarchyOptions& options = {});

}  // namespace sheafwb
