#pragma once

#include <vector>

#include "sheafwb/formula.hpp"

namespace sheafwb {

Formula double_negation(const Formula& f);

// Goedel-Gentzen negative translation: atoms, disjunctions and existentials are
// double-negated; conjunction, implication, negation and universals are kept.
Formula goedel_translate(const Formula& f);

// Replaces every subformula forall x. psi by forall x. ~~psi*, recursively.
Formula ac_star_transform(const Formula& f);

// Union of the subformulas of all inputs, sorted and deduplicated.
std::vector<Formula> subformula_closure(const std::vector<Formula>& formulas);

}  // namespace sheafwb
