#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sheafwb/formula.hpp"

namespace sheafwb {

// A classical finite structure. Functions and constants may be partial; evaluating an
// undefined value raises EvaluationError.
class FiniteStructure {
 public:
  using Tuple = std::vector<std::size_t>;

  FiniteStructure() = default;
  FiniteStructure(Signature sig, std::vector<std::string> element_names);

  const Signature& signature() const { return sig_; }
  std::size_t size() const { return names_.size(); }
  const std::string& element_name(std::size_t a) const { return names_.at(a); }
  const std::vector<std::string>& element_names() const { return names_; }

  void add_tuple(const std::string& relation, Tuple tuple);
  void set_function(const std::string& function, Tuple args, std::size_t value);
  void set_constant(const std::string& constant, std::size_t value);

  bool holds(const std::string& relation, const Tuple& tuple) const;
  std::optional<std::size_t> apply(const std::string& function, const Tuple& args) const;
  std::optional<std::size_t> constant(const std::string& constant) const;
  const std::set<Tuple>& tuples(const std::string& relation) const;

 private:
  Signature sig_;
  std::vector<std::string> names_;
  std::map<std::string, std::set<Tuple>> relations_;
  std::map<std::string, std::map<Tuple, std::size_t>> functions_;
  std::map<std::string, std::size_t> constants_;
};

using Assignment = std::map<std::string, std::size_t>;

std::size_t tarski_term(const FiniteStructure& m, const Term& t, const Assignment& env);
bool tarski_eval(const FiniteStructure& m, const Formula& f, const Assignment& env);

}  // namespace sheafwb
