#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "sheafwb/formula.hpp"
#include "sheafwb/sheaf.hpp"

namespace sheafwb {

// Free variable -> section. Evaluation at a node or over an open requires it to lie in
// every bound section's domain.
using Environment = std::map<std::string, Section>;

// Intersection of the bound sections' domains (the whole space when nothing is bound).
OpenSet environment_domain(const Site& site, const Environment& env);
Environment restrict_environment(const Environment& env, OpenSet v);

// Forcing evaluator over one sheaf. Results are memoised for the evaluator's lifetime;
// formulas passed in are retained so memo keys stay valid.
class Forcer {
 public:
  explicit Forcer(const SheafOfStructures& s);
  ~Forcer();
  Forcer(const Forcer&) = delete;
  Forcer& operator=(const Forcer&) = delete;

  const SheafOfStructures& sheaf() const { return s_; }

  bool forces_at(NodeId x, const Formula& f, const Environment& env = {});
  bool forces_on(OpenSet u, const Formula& f, const Environment& env = {});

  // Recursive Heyting valuation; quantifiers range over basic opens and principal sections.
  OpenSet truth_value(OpenSet u, const Formula& f, const Environment& env = {});
  // {x in u : forces_at(x, f, env)}.
  OpenSet truth_value_pointwise(OpenSet u, const Formula& f, const Environment& env = {});
  // Heyting valuation with quantifiers over every open W in u and every section on W.
  OpenSet truth_value_exhaustive(OpenSet u, const Formula& f, const Environment& env = {});

 private:
  struct Impl;
  const SheafOfStructures& s_;
  std::unique_ptr<Impl> impl_;
};

bool forces_at(const SheafOfStructures& s, NodeId x, const Formula& f, const Environment& env = {});
bool forces_on(const SheafOfStructures& s, OpenSet u, const Formula& f, const Environment& env = {});
OpenSet truth_value(const SheafOfStructures& s, OpenSet u, const Formula& f,
                    const Environment& env = {});
OpenSet truth_value_pointwise(const SheafOfStructures& s, OpenSet u, const Formula& f,
                              const Environment& env = {});
OpenSet truth_value_exhaustive(const SheafOfStructures& s, OpenSet u, const Formula& f,
                               const Environment& env = {});

// Greedy witness for a forced existential: a section whose domain is dense in `u` and which
// forces the body there. Nodes are visited in declaration order, fiber elements in order.
Section glue_witnesses(const SheafOfStructures& s, OpenSet u, const Formula& exists_formula,
                       const Environment& env = {});

bool is_classical_node(const SheafOfStructures& s, NodeId x);

struct ClassicalComparison {
  bool forced;
  bool satisfied;  // Tarski satisfaction in the fiber structure
  bool agree() const { return forced == satisfied; }
};

// Requires [x) = {x}; throws InvalidArgument otherwise.
ClassicalComparison classical_check(const SheafOfStructures& s, NodeId x, const Formula& f,
                                    const Environment& env = {});

}  // namespace sheafwb
