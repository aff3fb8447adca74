#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace sheafwb {

// Relation, function and constant symbols of a single-sorted first-order type.
class Signature {
 public:
  void add_relation(const std::string& name, std::size_t arity);
  void add_function(const std::string& name, std::size_t arity);
  void add_constant(const std::string& name);

  std::optional<std::size_t> relation_arity(const std::string& name) const;
  std::optional<std::size_t> function_arity(const std::string& name) const;
  bool is_constant(const std::string& name) const { return constants_.count(name) != 0; }
  bool declares(const std::string& name) const;

  const std::map<std::string, std::size_t>& relations() const { return relations_; }
  const std::map<std::string, std::size_t>& functions() const { return functions_; }
  const std::set<std::string>& constants() const { return constants_; }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::map<std::string, std::size_t> relations_;
  std::map<std::string, std::size_t> functions_;
  std::set<std::string> constants_;
};

class Term {
 public:
  enum class Kind { Variable, Constant, Apply };

  static Term variable(std::string name);
  static Term constant(std::string name);
  static Term apply(std::string function, std::vector<Term> args);

  Kind kind() const;
  const std::string& name() const;
  std::span<const Term> args() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator<(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

enum class Connective { Equal, Relation, And, Or, Not, Implies, Exists, Forall };

// Immutable first-order formula. Copies share structure.
class Formula {
 public:
  static Formula equal(Term lhs, Term rhs);
  static Formula relation(std::string name, std::vector<Term> args);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula negation(Formula body);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula exists(std::string variable, Formula body);
  static Formula forall(std::string variable, Formula body);

  Connective connective() const;
  bool is_atomic() const;
  bool is_binary() const;
  bool is_quantifier() const;

  // Relation name for Relation atoms, bound variable for quantifiers.
  const std::string& symbol() const;
  // Arguments of an atom (two terms for Equal).
  std::span<const Term> terms() const;
  const Formula& lhs() const;
  const Formula& rhs() const;
  // Operand of Not, body of a quantifier.
  const Formula& body() const;

  // Identity of the shared node; stable while any copy is alive.
  const void* identity() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator<(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::string to_string(const Term& t);
std::string to_string(const Formula& f);

std::set<std::string> variables(const Term& t);
std::set<std::string> free_variables(const Formula& f);
// Free and bound variable names.
std::set<std::string> all_variables(const Formula& f);

// Capture-avoiding substitution of `replacement` for free occurrences of `variable`.
Formula substitute(const Formula& f, const std::string& variable, const Term& replacement);

// Atoms have depth 0; each connective or quantifier adds one.
std::size_t depth(const Formula& f);
std::size_t size(const Formula& f);

// Subformulas in post-order, duplicates removed, the formula itself last.
std::vector<Formula> subformulas(const Formula& f);

// Renames binders that shadow an enclosing binder or clash with a free variable.
Formula rename_apart(const Formula& f);

// Throws InvalidArgument if a symbol is undeclared or used with the wrong arity.
void check_signature(const Formula& f, const Signature& sig);

}  // namespace sheafwb
