#include "sheafwb/formula.hpp"

#include <algorithm>
#include <functional>

#include "sheafwb/error.hpp"

namespace sheafwb {

// --- Signature -------------------------------------------------------------

bool Signature::declares(const std::string& name) const {
  return relations_.count(name) != 0 || functions_.count(name) != 0 || constants_.count(name) != 0;
}

void Signature::add_relation(const std::string& name, std::size_t arity) {
  if (arity == 0) throw InvalidArgument("relation '" + name + "' must have arity >= 1");
  if (auto known = relation_arity(name)) {
    if (*known != arity) throw InvalidArgument("relation '" + name + "' used with two arities");
    return;
  }
  if (declares(name)) throw InvalidArgument("symbol '" + name + "' declared with two kinds");
  relations_.emplace(name, arity);
}

void Signature::add_function(const std::string& name, std::size_t arity) {
  if (arity == 0) throw InvalidArgument("function '" + name + "' must have arity >= 1");
  if (auto known = function_arity(name)) {
    if (*known != arity) throw InvalidArgument("function '" + name + "' used with two arities");
    return;
  }
  if (declares(name)) throw InvalidArgument("symbol '" + name + "' declared with two kinds");
  functions_.emplace(name, arity);
}

void Signature::add_constant(const std::string& name) {
  if (is_constant(name)) return;
  if (declares(name)) throw InvalidArgument("symbol '" + name + "' declared with two kinds");
  constants_.insert(name);
}

std::optional<std::size_t> Signature::relation_arity(const std::string& name) const {
  const auto it = relations_.find(name);
  if (it == relations_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Signature::function_arity(const std::string& name) const {
  const auto it = functions_.find(name);
  if (it == functions_.end()) return std::nullopt;
  return it->second;
}

// --- Term ------------------------------------------------------------------

struct Term::Node {
  Kind kind;
  std::string name;
  std::vector<Term> args;
};

Term Term::variable(std::string name) {
  return Term(std::make_shared<const Node>(Node{Kind::Variable, std::move(name), {}}));
}

Term Term::constant(std::string name) {
  return Term(std::make_shared<const Node>(Node{Kind::Constant, std::move(name), {}}));
}

Term Term::apply(std::string function, std::vector<Term> args) {
  if (args.empty()) throw InvalidArgument("function application needs arguments");
  return Term(std::make_shared<const Node>(Node{Kind::Apply, std::move(function), std::move(args)}));
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
std::span<const Term> Term::args() const { return node_->args; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  return a.node_->kind == b.node_->kind && a.node_->name == b.node_->name &&
         a.node_->args == b.node_->args;
}

bool operator<(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return false;
  if (a.node_->kind != b.node_->kind) return a.node_->kind < b.node_->kind;
  if (a.node_->name != b.node_->name) return a.node_->name < b.node_->name;
  return std::lexicographical_compare(a.node_->args.begin(), a.node_->args.end(),
                                      b.node_->args.begin(), b.node_->args.end());
}

// --- Formula ---------------------------------------------------------------

struct Formula::Node {
  Connective connective;
  std::string symbol;
  std::vector<Term> terms;
  std::vector<Formula> children;
};

namespace {

template <typename Node>
std::shared_ptr<const Node> make_node(Connective c, std::string symbol, std::vector<Term> terms,
                                      std::vector<Formula> children) {
  return std::make_shared<const Node>(
      Node{c, std::move(symbol), std::move(terms), std::move(children)});
}

}  // namespace

Formula Formula::equal(Term lhs, Term rhs) {
  return Formula(make_node<Node>(Connective::Equal, "", {std::move(lhs), std::move(rhs)}, {}));
}

Formula Formula::relation(std::string name, std::vector<Term> args) {
  if (args.empty()) throw InvalidArgument("relation atom needs arguments");
  return Formula(make_node<Node>(Connective::Relation, std::move(name), std::move(args), {}));
}

Formula Formula::conj(Formula lhs, Formula rhs) {
  return Formula(make_node<Node>(Connective::And, "", {}, {std::move(lhs), std::move(rhs)}));
}

Formula Formula::disj(Formula lhs, Formula rhs) {
  return Formula(make_node<Node>(Connective::Or, "", {}, {std::move(lhs), std::move(rhs)}));
}

Formula Formula::negation(Formula body) {
  return Formula(make_node<Node>(Connective::Not, "", {}, {std::move(body)}));
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  return Formula(make_node<Node>(Connective::Implies, "", {}, {std::move(lhs), std::move(rhs)}));
}

Formula Formula::exists(std::string variable, Formula body) {
  return Formula(make_node<Node>(Connective::Exists, std::move(variable), {}, {std::move(body)}));
}

Formula Formula::forall(std::string variable, Formula body) {
  return Formula(make_node<Node>(Connective::Forall, std::move(variable), {}, {std::move(body)}));
}

Connective Formula::connective() const { return node_->connective; }

bool Formula::is_atomic() const {
  return node_->connective == Connective::Equal || node_->connective == Connective::Relation;
}

bool Formula::is_binary() const {
  const auto c = node_->connective;
  return c == Connective::And || c == Connective::Or || c == Connective::Implies;
}

bool Formula::is_quantifier() const {
  return node_->connective == Connective::Exists || node_->connective == Connective::Forall;
}

const std::string& Formula::symbol() const { return node_->symbol; }
std::span<const Term> Formula::terms() const { return node_->terms; }

const Formula& Formula::lhs() const {
  if (!is_binary()) throw InvalidArgument("lhs() on a non-binary formula");
  return node_->children[0];
}

const Formula& Formula::rhs() const {
  if (!is_binary()) throw InvalidArgument("rhs() on a non-binary formula");
  return node_->children[1];
}

const Formula& Formula::body() const {
  if (node_->connective != Connective::Not && !is_quantifier()) {
    throw InvalidArgument("body() on a formula without a single operand");
  }
  return node_->children[0];
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  return a.node_->connective == b.node_->connective && a.node_->symbol == b.node_->symbol &&
         a.node_->terms == b.node_->terms && a.node_->children == b.node_->children;
}

bool operator<(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.connective != y.connective) return x.connective < y.connective;
  if (x.symbol != y.symbol) return x.symbol < y.symbol;
  if (x.terms != y.terms) {
    return std::lexicographical_compare(x.terms.begin(), x.terms.end(), y.terms.begin(),
                                        y.terms.end());
  }
  return std::lexicographical_compare(x.children.begin(), x.children.end(), y.children.begin(),
                                      y.children.end());
}

// --- printing --------------------------------------------------------------

std::string to_string(const Term& t) {
  if (t.kind() != Term::Kind::Apply) return t.name();
  std::string out = t.name() + "(";
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i != 0) out += ", ";
    out += to_string(t.args()[i]);
  }
  return out + ")";
}

namespace {

// Binding strength; the parser uses the same table.
int precedence(const Formula& f) {
  switch (f.connective()) {
    case Connective::Exists:
    case Connective::Forall:
      return 0;
    case Connective::Implies:
      return 1;
    case Connective::Or:
      return 2;
    case Connective::And:
      return 3;
    case Connective::Not:
      return 4;
    default:
      return 5;
  }
}

void print(const Formula& f, int min_prec, std::string& out) {
  const int prec = precedence(f);
  const bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (f.connective()) {
    case Connective::Equal:
      out += to_string(f.terms()[0]) + " = " + to_string(f.terms()[1]);
      break;
    case Connective::Relation:
      out += f.symbol() + "(";
      for (std::size_t i = 0; i < f.terms().size(); ++i) {
        if (i != 0) out += ", ";
        out += to_string(f.terms()[i]);
      }
      out += ')';
      break;
    case Connective::Not:
      out += '~';
      print(f.body(), 4, out);
      break;
    case Connective::And:
      print(f.lhs(), 3, out);
      out += " & ";
      print(f.rhs(), 4, out);
      break;
    case Connective::Or:
      print(f.lhs(), 2, out);
      out += " | ";
      print(f.rhs(), 3, out);
      break;
    case Connective::Implies:
      print(f.lhs(), 2, out);
      out += " -> ";
      print(f.rhs(), 1, out);
      break;
    case Connective::Exists:
    case Connective::Forall:
      out += f.connective() == Connective::Exists ? "exists " : "forall ";
      out += f.symbol() + ". ";
      print(f.body(), 0, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, 0, out);
  return out;
}

// --- variables and substitution ---------------------------------------------

std::set<std::string> variables(const Term& t) {
  std::set<std::string> out;
  std::function<void(const Term&)> walk = [&](const Term& u) {
    if (u.kind() == Term::Kind::Variable) out.insert(u.name());
    for (const auto& a : u.args()) walk(a);
  };
  walk(t);
  return out;
}

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> out;
  if (f.is_atomic()) {
    for (const auto& t : f.terms()) {
      auto vs = variables(t);
      out.insert(vs.begin(), vs.end());
    }
  } else if (f.is_binary()) {
    out = free_variables(f.lhs());
    auto r = free_variables(f.rhs());
    out.insert(r.begin(), r.end());
  } else {
    out = free_variables(f.body());
    if (f.is_quantifier()) out.erase(f.symbol());
  }
  return out;
}

std::set<std::string> all_variables(const Formula& f) {
  std::set<std::string> out;
  if (f.is_atomic()) {
    for (const auto& t : f.terms()) {
      auto vs = variables(t);
      out.insert(vs.begin(), vs.end());
    }
  } else if (f.is_binary()) {
    out = all_variables(f.lhs());
    auto r = all_variables(f.rhs());
    out.insert(r.begin(), r.end());
  } else {
    out = all_variables(f.body());
    if (f.is_quantifier()) out.insert(f.symbol());
  }
  return out;
}

namespace {

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  for (std::size_t i = 1;; ++i) {
    std::string candidate = base + "_" + std::to_string(i);
    if (avoid.count(candidate) == 0) return candidate;
  }
}

Term substitute_term(const Term& t, const std::string& variable, const Term& replacement) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      return t.name() == variable ? replacement : t;
    case Term::Kind::Constant:
      return t;
    case Term::Kind::Apply: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(substitute_term(a, variable, replacement));
      return Term::apply(t.name(), std::move(args));
    }
  }
  return t;
}

Formula rebuild(const Formula& f, std::vector<Formula> children, std::string symbol) {
  switch (f.connective()) {
    case Connective::And:
      return Formula::conj(std::move(children[0]), std::move(children[1]));
    case Connective::Or:
      return Formula::disj(std::move(children[0]), std::move(children[1]));
    case Connective::Implies:
      return Formula::implies(std::move(children[0]), std::move(children[1]));
    case Connective::Not:
      return Formula::negation(std::move(children[0]));
    case Connective::Exists:
      return Formula::exists(std::move(symbol), std::move(children[0]));
    case Connective::Forall:
      return Formula::forall(std::move(symbol), std::move(children[0]));
    default:
      return f;
  }
}

}  // namespace

Formula substitute(const Formula& f, const std::string& variable, const Term& replacement) {
  if (f.is_atomic()) {
    std::vector<Term> terms;
    for (const auto& t : f.terms()) terms.push_back(substitute_term(t, variable, replacement));
    if (f.connective() == Connective::Equal) return Formula::equal(terms[0], terms[1]);
    return Formula::relation(f.symbol(), std::move(terms));
  }
  if (f.is_binary()) {
    return rebuild(f, {substitute(f.lhs(), variable, replacement),
                       substitute(f.rhs(), variable, replacement)}, "");
  }
  if (f.connective() == Connective::Not) {
    return Formula::negation(substitute(f.body(), variable, replacement));
  }
  // Quantifier.
  const std::string& bound = f.symbol();
  if (bound == variable) return f;
  if (free_variables(f.body()).count(variable) == 0) return f;
  const auto incoming = variables(replacement);
  if (incoming.count(bound) == 0) {
    return rebuild(f, {substitute(f.body(), variable, replacement)}, bound);
  }
  auto avoid = all_variables(f.body());
  avoid.insert(incoming.begin(), incoming.end());
  avoid.insert(variable);
  const std::string renamed = fresh_name(bound, avoid);
  Formula body = substitute(f.body(), bound, Term::variable(renamed));
  return rebuild(f, {substitute(body, variable, replacement)}, renamed);
}

std::size_t depth(const Formula& f) {
  if (f.is_atomic()) return 0;
  if (f.is_binary()) return 1 + std::max(depth(f.lhs()), depth(f.rhs()));
  return 1 + depth(f.body());
}

std::size_t size(const Formula& f) {
  if (f.is_atomic()) return 1;
  if (f.is_binary()) return 1 + size(f.lhs()) + size(f.rhs());
  return 1 + size(f.body());
}

std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  std::set<Formula> seen;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.is_binary()) {
      walk(g.lhs());
      walk(g.rhs());
    } else if (!g.is_atomic()) {
      walk(g.body());
    }
    if (seen.insert(g).second) out.push_back(g);
  };
  walk(f);
  return out;
}

Formula rename_apart(const Formula& f) {
  std::set<std::string> avoid = all_variables(f);
  const std::set<std::string> free = free_variables(f);
  std::function<Formula(const Formula&, std::set<std::string>&)> walk =
      [&](const Formula& g, std::set<std::string>& bound) -> Formula {
    if (g.is_atomic()) return g;
    if (g.is_binary()) return rebuild(g, {walk(g.lhs(), bound), walk(g.rhs(), bound)}, "");
    if (g.connective() == Connective::Not) return Formula::negation(walk(g.body(), bound));
    std::string name = g.symbol();
    Formula body = g.body();
    if (bound.count(name) != 0 || free.count(name) != 0) {
      const std::string renamed = fresh_name(name, avoid);
      avoid.insert(renamed);
      body = substitute(body, name, Term::variable(renamed));
      name = renamed;
    }
    bound.insert(name);
    Formula inner = walk(body, bound);
    bound.erase(name);
    return rebuild(g, {std::move(inner)}, name);
  };
  std::set<std::string> bound;
  return walk(f, bound);
}

namespace {

void check_term(const Term& t, const Signature& sig) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      if (sig.declares(t.name()) && !sig.is_constant(t.name())) {
        throw InvalidArgument("symbol '" + t.name() + "' used as a variable");
      }
      return;
    case Term::Kind::Constant:
      if (!sig.is_constant(t.name())) {
        throw InvalidArgument("unknown constant '" + t.name() + "'");
      }
      return;
    case Term::Kind::Apply: {
      const auto arity = sig.function_arity(t.name());
      if (!arity) throw InvalidArgument("unknown function '" + t.name() + "'");
      if (*arity != t.args().size()) {
        throw InvalidArgument("function '" + t.name() + "' expects " + std::to_string(*arity) +
                              " arguments, got " + std::to_string(t.args().size()));
      }
      for (const auto& a : t.args()) check_term(a, sig);
      return;
    }
  }
}

}  // namespace

void check_signature(const Formula& f, const Signature& sig) {
  if (f.is_atomic()) {
    if (f.connective() == Connective::Relation) {
      const auto arity = sig.relation_arity(f.symbol());
      if (!arity) throw InvalidArgument("unknown relation '" + f.symbol() + "'");
      if (*arity != f.terms().size()) {
        throw InvalidArgument("relation '" + f.symbol() + "' expects " + std::to_string(*arity) +
                              " arguments, got " + std::to_string(f.terms().size()));
      }
    }
    for (const auto& t : f.terms()) check_term(t, sig);
  } else if (f.is_binary()) {
    check_signature(f.lhs(), sig);
    check_signature(f.rhs(), sig);
  } else {
    check_signature(f.body(), sig);
  }
}

}  // namespace sheafwb
