#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sheafwb/formula.hpp"
#include "sheafwb/site.hpp"
#include "sheafwb/structure.hpp"

namespace sheafwb {

// Index of an element inside one fiber.
using Element = std::size_t;
inline constexpr Element kNone = SIZE_MAX;

using Tuple = std::vector<Element>;

// A sheaf of structures over a finite site, stored as a functor: one finite structure per
// node and a transition map fiber(x) -> fiber(y) for every x <= y.
class SheafOfStructures {
 public:
  const Site& site() const { return site_; }
  const Signature& signature() const { return sig_; }

  std::size_t fiber_size(NodeId x) const { return fibers_.at(x).size(); }
  const std::vector<std::string>& fiber(NodeId x) const { return fibers_.at(x); }
  const std::string& element_name(NodeId x, Element a) const { return fibers_.at(x).at(a); }
  std::optional<Element> find_element(NodeId x, std::string_view name) const;

  // kNone where the map is undefined. Throws InvalidArgument unless x <= y.
  Element transition(NodeId x, NodeId y, Element a) const;

  bool holds(const std::string& relation, NodeId x, const Tuple& tuple) const;
  const std::set<Tuple>& tuples(const std::string& relation, NodeId x) const;
  // kNone where undefined.
  Element apply(const std::string& function, NodeId x, const Tuple& args) const;
  const std::map<Tuple, Element>& function_table(const std::string& function, NodeId x) const;
  Element constant(const std::string& constant, NodeId x) const;

 private:
  friend class SheafBuilder;
  explicit SheafOfStructures(Site site) : site_(std::move(site)) {}

  Site site_;
  Signature sig_;
  std::vector<std::vector<std::string>> fibers_;
  std::vector<std::vector<Element>> transitions_;  // [x * n + y], empty unless x <= y
  std::map<std::string, std::vector<std::set<Tuple>>> relations_;
  std::map<std::string, std::vector<std::map<Tuple, Element>>> functions_;
  std::map<std::string, std::vector<Element>> constants_;
};

class SheafBuilder {
 public:
  explicit SheafBuilder(Site site);

  const Site& site() const { return sheaf_.site_; }

  Element add_element(NodeId x, std::string name);
  Element element(NodeId x, std::string_view name) const;
  Element element_or_none(NodeId x, std::string_view name) const;
  const Signature& signature() const { return sheaf_.sig_; }
  std::size_t fiber_size(NodeId x) const { return sheaf_.fibers_.at(x).size(); }

  void set_transition(NodeId x, NodeId y, Element a, Element b);

  void declare_relation(const std::string& name, std::size_t arity);
  void add_tuple(const std::string& relation, NodeId x, Tuple tuple);
  void declare_function(const std::string& name, std::size_t arity);
  void set_function(const std::string& function, NodeId x, Tuple args, Element value);
  void declare_constant(const std::string& name);
  void set_constant(const std::string& constant, NodeId x, Element value);

  // Unset transitions are filled in, when `infer_transitions` holds, first by mapping to
  // the same-named element of the target fiber, then by composing through intermediate
  // nodes. Whatever stays unset is left undefined for validate_sheaf to report.
  SheafOfStructures build(bool infer_transitions = true) const;

 private:
  void check_element(NodeId x, Element a) const;

  SheafOfStructures sheaf_;
};

// A transition-compatible family of fiber elements over an open set.
struct Section {
  OpenSet domain;
  std::vector<Element> values;  // indexed by node; kNone outside the domain

  Element at(NodeId x) const { return values.at(x); }

  friend bool operator==(const Section&, const Section&) = default;
  friend auto operator<=>(const Section&, const Section&) = default;
};

Section empty_section(const Site& site);
Section principal_section(const SheafOfStructures& s, NodeId x, Element a);
Section restrict_section(const Section& sigma, OpenSet v);
bool is_compatible(const SheafOfStructures& s, const Section& sigma);

// Every section with domain `u`, sorted. Throws GuardExceeded past `limit` sections.
std::vector<Section> sections_over(const SheafOfStructures& s, OpenSet u,
                                   std::size_t limit = 1'000'000);

// The classical structure of sections over `u`: relations hold iff they hold at every node
// of `u`; functions and constants are computed nodewise.
FiniteStructure sections_structure(const SheafOfStructures& s, OpenSet u,
                                   std::size_t limit = 1'000'000);
FiniteStructure fiber_structure(const SheafOfStructures& s, NodeId x);

std::string format_section(const SheafOfStructures& s, const Section& sigma);

enum class ViolationKind {
  WellFormedness,
  Functoriality,
  RelationOpenness,
  FunctionContinuity,
  ConstantContinuity,
  SectionCompatibility,
};

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::size_t count(ViolationKind kind) const;
};

ValidationReport validate_sheaf(const SheafOfStructures& s);
ValidationReport validate_sections(const SheafOfStructures& s,
                                   const std::map<std::string, Section>& sections);

}  // namespace sheafwb
