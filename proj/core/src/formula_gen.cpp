#include "sheafwb/formula_gen.hpp"

#include "sheafwb/error.hpp"

namespace sheafwb {

FormulaGenerator::FormulaGenerator(Signature sig, std::vector<std::string> variables,
                                   std::uint64_t seed)
    : sig_(std::move(sig)), variables_(std::move(variables)), rng_(seed) {
  if (variables_.empty()) throw InvalidArgument("formula generator needs at least one variable");
  for (const auto& [name, arity] : sig_.relations()) relation_names_.push_back(name);
  for (const auto& [name, arity] : sig_.functions()) function_names_.push_back(name);
  for (const auto& name : sig_.constants()) constant_names_.push_back(name);
}

std::size_t FormulaGenerator::pick(std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
}

Term FormulaGenerator::random_term(std::size_t max_depth) {
  const std::size_t choices = 2 + (max_depth > 0 && !function_names_.empty() ? 1 : 0);
  const std::size_t c = pick(choices + 2);
  if (c == 2 && !constant_names_.empty()) {
    return Term::constant(constant_names_[pick(constant_names_.size())]);
  }
  if (c == 3 && choices == 3) {
    const auto& f = function_names_[pick(function_names_.size())];
    std::vector<Term> args;
    for (std::size_t i = 0; i < *sig_.function_arity(f); ++i) {
      args.push_back(random_term(max_depth - 1));
    }
    return Term::apply(f, std::move(args));
  }
  return Term::variable(variables_[pick(variables_.size())]);
}

Formula FormulaGenerator::random_atom() {
  if (relation_names_.empty() || pick(4) == 0) {
    Term lhs = random_term();
    return Formula::equal(std::move(lhs), random_term());
  }
  const auto& r = relation_names_[pick(relation_names_.size())];
  std::vector<Term> args;
  for (std::size_t i = 0; i < *sig_.relation_arity(r); ++i) args.push_back(random_term());
  return Formula::relation(r, std::move(args));
}

Formula FormulaGenerator::random(std::size_t max_depth) {
  if (max_depth == 0 || pick(4) == 0) return random_atom();
  const std::size_t d = max_depth - 1;
  switch (pick(7)) {
    case 0: { Formula a = random(d); return Formula::conj(std::move(a), random(d)); }
    case 1: { Formula a = random(d); return Formula::disj(std::move(a), random(d)); }
    case 2: { Formula a = random(d); return Formula::implies(std::move(a), random(d)); }
    case 3: return Formula::negation(random(d));
    case 4: return Formula::exists(variables_[pick(variables_.size())], random(d));
    case 5: return Formula::forall(variables_[pick(variables_.size())], random(d));
    default: return Formula::negation(Formula::negation(random(d)));
  }
}

std::vector<Formula> enumerate_formulas(const std::vector<Formula>& atoms,
                                        const std::vector<std::string>& binders,
                                        std::size_t max_depth) {
  std::vector<Formula> level = atoms;
  for (std::size_t d = 0; d < max_depth; ++d) {
    std::vector<Formula> next = atoms;
    for (const auto& a : level) next.push_back(Formula::negation(a));
    for (const auto& a : level) {
      for (const auto& b : level) {
        next.push_back(Formula::conj(a, b));
        next.push_back(Formula::disj(a, b));
        next.push_back(Formula::implies(a, b));
      }
    }
    for (const auto& v : binders) {
      for (const auto& a : level) {
        next.push_back(Formula::exists(v, a));
        next.push_back(Formula::forall(v, a));
      }
    }
    level = std::move(next);
  }
  return level;
}

}  // namespace sheafwb
