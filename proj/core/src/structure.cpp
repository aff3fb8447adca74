#include "sheafwb/structure.hpp"

#include "sheafwb/error.hpp"

namespace sheafwb {

FiniteStructure::FiniteStructure(Signature sig, std::vector<std::string> element_names)
    : sig_(std::move(sig)), names_(std::move(element_names)) {}

void FiniteStructure::add_tuple(const std::string& relation, Tuple tuple) {
  const auto arity = sig_.relation_arity(relation);
  if (!arity || *arity != tuple.size()) throw InvalidArgument("bad relation tuple for " + relation);
  relations_[relation].insert(std::move(tuple));
}

void FiniteStructure::set_function(const std::string& function, Tuple args, std::size_t value) {
  const auto arity = sig_.function_arity(function);
  if (!arity || *arity != args.size()) throw InvalidArgument("bad function entry for " + function);
  functions_[function][std::move(args)] = value;
}

void FiniteStructure::set_constant(const std::string& constant, std::size_t value) {
  if (!sig_.is_constant(constant)) throw InvalidArgument("unknown constant " + constant);
  constants_[constant] = value;
}

bool FiniteStructure::holds(const std::string& relation, const Tuple& tuple) const {
  auto it = relations_.find(relation);
  return it != relations_.end() && it->second.count(tuple) != 0;
}

std::optional<std::size_t> FiniteStructure::apply(const std::string& function,
                                                  const Tuple& args) const {
  auto it = functions_.find(function);
  if (it == functions_.end()) return std::nullopt;
  auto jt = it->second.find(args);
  if (jt == it->second.end()) return std::nullopt;
  return jt->second;
}

std::optional<std::size_t> FiniteStructure::constant(const std::string& constant) const {
  auto it = constants_.find(constant);
  if (it == constants_.end()) return std::nullopt;
  return it->second;
}

const std::set<FiniteStructure::Tuple>& FiniteStructure::tuples(const std::string& relation) const {
  static const std::set<Tuple> kEmpty;
  auto it = relations_.find(relation);
  return it == relations_.end() ? kEmpty : it->second;
}

std::size_t tarski_term(const FiniteStructure& m, const Term& t, const Assignment& env) {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      auto it = env.find(t.name());
      if (it == env.end()) throw EvaluationError("unbound variable '" + t.name() + "'");
      return it->second;
    }
    case Term::Kind::Constant: {
      auto c = m.constant(t.name());
      if (!c) throw EvaluationError("constant '" + t.name() + "' has no value");
      return *c;
    }
    case Term::Kind::Apply: {
      FiniteStructure::Tuple args;
      for (const auto& a : t.args()) args.push_back(tarski_term(m, a, env));
      auto v = m.apply(t.name(), args);
      if (!v) throw EvaluationError("function '" + t.name() + "' undefined on its arguments");
      return *v;
    }
  }
  throw EvaluationError("malformed term");
}

bool tarski_eval(const FiniteStructure& m, const Formula& f, const Assignment& env) {
  switch (f.connective()) {
    case Connective::Equal:
      return tarski_term(m, f.terms()[0], env) == tarski_term(m, f.terms()[1], env);
    case Connective::Relation: {
      FiniteStructure::Tuple tuple;
      for (const auto& t : f.terms()) tuple.push_back(tarski_term(m, t, env));
      return m.holds(f.symbol(), tuple);
    }
    case Connective::And:
      return tarski_eval(m, f.lhs(), env) && tarski_eval(m, f.rhs(), env);
    case Connective::Or:
      return tarski_eval(m, f.lhs(), env) || tarski_eval(m, f.rhs(), env);
    case Connective::Implies:
      return !tarski_eval(m, f.lhs(), env) || tarski_eval(m, f.rhs(), env);
    case Connective::Not:
      return !tarski_eval(m, f.body(), env);
    case Connective::Exists:
    case Connective::Forall: {
      const bool universal = f.connective() == Connective::Forall;
      Assignment inner = env;
      for (std::size_t a = 0; a < m.size(); ++a) {
        inner[f.symbol()] = a;
        if (tarski_eval(m, f.body(), inner) != universal) return !universal;
      }
      return universal;
    }
  }
  throw EvaluationError("malformed formula");
}

}  // namespace sheafwb
