#include "sheafwb/translate.hpp"

#include <algorithm>
#include <set>

namespace sheafwb {

Formula double_negation(const Formula& f) { return Formula::negation(Formula::negation(f)); }

Formula goedel_translate(const Formula& f) {
  switch (f.connective()) {
    case Connective::Equal:
    case Connective::Relation:
      return double_negation(f);
    case Connective::And:
      return Formula::conj(goedel_translate(f.lhs()), goedel_translate(f.rhs()));
    case Connective::Or:
      return double_negation(Formula::disj(goedel_translate(f.lhs()), goedel_translate(f.rhs())));
    case Connective::Implies:
      return Formula::implies(goedel_translate(f.lhs()), goedel_translate(f.rhs()));
    case Connective::Not:
      return Formula::negation(goedel_translate(f.body()));
    case Connective::Exists:
      return double_negation(Formula::exists(f.symbol(), goedel_translate(f.body())));
    case Connective::Forall:
      return Formula::forall(f.symbol(), goedel_translate(f.body()));
  }
  return f;
}

Formula ac_star_transform(const Formula& f) {
  switch (f.connective()) {
    case Connective::Equal:
    case Connective::Relation:
      return f;
    case Connective::And:
      return Formula::conj(ac_star_transform(f.lhs()), ac_star_transform(f.rhs()));
    case Connective::Or:
      return Formula::disj(ac_star_transform(f.lhs()), ac_star_transform(f.rhs()));
    case Connective::Implies:
      return Formula::implies(ac_star_transform(f.lhs()), ac_star_transform(f.rhs()));
    case Connective::Not:
      return Formula::negation(ac_star_transform(f.body()));
    case Connective::Exists:
      return Formula::exists(f.symbol(), ac_star_transform(f.body()));
    case Connective::Forall:
      return Formula::forall(f.symbol(), double_negation(ac_star_transform(f.body())));
  }
  return f;
}

std::vector<Formula> subformula_closure(const std::vector<Formula>& formulas) {
  std::set<Formula> all;
  for (const auto& f : formulas) {
    for (auto& g : subformulas(f)) all.insert(std::move(g));
  }
  return {all.begin(), all.end()};
}

}  // namespace sheafwb
