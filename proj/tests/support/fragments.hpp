#pragma once

#include <string>
#include <vector>

#include "sheafwb/formula.hpp"
#include "sheafwb/formula_gen.hpp"

namespace sheafwb::testing {

// One atom per symbol over the variables x and y, plus x = y.
inline std::vector<Formula> atoms_for(const Signature& sig) {
  const std::vector<std::string> vars{"x", "y"};
  std::vector<Formula> atoms{Formula::equal(Term::variable("x"), Term::variable("y"))};
  for (const auto& [r, arity] : sig.relations()) {
    std::vector<Term> args;
    for (std::size_t i = 0; i < arity; ++i) args.push_back(Term::variable(vars[i % 2]));
    atoms.push_back(Formula::relation(r, std::move(args)));
  }
  for (const auto& [f, arity] : sig.functions()) {
    std::vector<Term> args;
    for (std::size_t i = 0; i < arity; ++i) args.push_back(Term::variable("x"));
    atoms.push_back(Formula::equal(Term::apply(f, std::move(args)), Term::variable("y")));
  }
  for (const auto& c : sig.constants()) {
    atoms.push_back(Formula::equal(Term::constant(c), Term::variable("x")));
  }
  return atoms;
}

// Every formula of depth <= d over atoms_for(sig) with binders x and y.
inline std::vector<Formula> fragment(const Signature& sig, std::size_t d) {
  return enumerate_formulas(atoms_for(sig), {"x", "y"}, d);
}

}  // namespace sheafwb::testing
