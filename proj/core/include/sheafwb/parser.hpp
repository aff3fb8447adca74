#pragma once

#include <set>
#include <string>
#include <string_view>

#include "sheafwb/formula.hpp"

namespace sheafwb {

struct ParsedFormula {
  Formula formula;
  std::set<std::string> free_variables;
  // The signature the formula was checked against (the inferred one when parsing permissively).
  Signature signature;
};

// Grammar, loosest binding first:
//   formula  := 'forall' x '.' formula | 'exists' x '.' formula | implies
//   implies  := disj ('->' implies)?
//   disj     := conj ('|' conj)*
//   conj     := unary ('&' unary)*
//   unary    := '~' unary | quantifier | '(' formula ')' | R(t, ...) | t '=' t
//   term     := x | c | f(t, ...)
// Free variables are allowed and reported. Shadowing binders are alpha-renamed.
ParsedFormula parse_formula(std::string_view text, const Signature& sig);

// Same grammar, but symbols are declared on first use: `R(...)` in atom position is a relation
// unless followed by `=`, `f(...)` in term position is a function, bare names are variables.
ParsedFormula parse_formula_permissive(std::string_view text);

}  // namespace sheafwb
