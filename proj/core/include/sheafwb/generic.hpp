#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sheafwb/forcing.hpp"
#include "sheafwb/formula.hpp"
#include "sheafwb/sheaf.hpp"
#include "sheafwb/structure.hpp"

namespace sheafwb {

// A filter of opens on a finite site: everything above its minimum member.
class OpenFilter {
 public:
  static OpenFilter point(const Site& site, NodeId x);
  // The filter generated by `generators` (the whole space when empty).
  static OpenFilter generated_by(const Site& site, const std::vector<OpenSet>& generators);

  OpenSet minimum() const { return minimum_; }
  bool contains(OpenSet w) const { return minimum_.subset_of(w); }
  std::vector<OpenSet> members(const Site& site) const;

 private:
  explicit OpenFilter(OpenSet minimum) : minimum_(minimum) {}
  OpenSet minimum_;
};

struct GenericFailure {
  Formula formula;
  std::string environment;
  int condition;  // 1: nothing in the filter decides the formula; 2: no witness in the filter
  std::string detail;
};

struct GenericReport {
  std::vector<GenericFailure> failures;
  std::size_t checks = 0;
  bool ok() const { return failures.empty(); }
};

// Genericity relative to the subformula closure of `formulas` (restricted to depth
// <= max_depth), over every environment of sections on members of the filter.
GenericReport check_generic(const SheafOfStructures& s, const OpenFilter& filter,
                            const std::vector<Formula>& formulas,
                            std::size_t max_depth = SIZE_MAX);

// The direct limit along a filter, realised on its minimum member.
struct CollapsedModel {
  FiniteStructure structure;
  OpenSet base;
  std::vector<Section> representatives;

  // Class of a section whose domain belongs to the filter.
  std::size_t class_of(const Section& sigma) const;
};

CollapsedModel collapse(const SheafOfStructures& s, const OpenFilter& filter);

bool tarski_eval(const CollapsedModel& m, const Formula& f, const Assignment& env);

struct Discrepancy {
  Formula formula;
  std::string environment;
  bool satisfied;         // collapse satisfies the formula
  bool translated_in_filter;  // truth value of the Goedel translation lies in the filter
};

struct FundamentalReport {
  std::vector<Discrepancy> discrepancies;
  std::size_t checks = 0;
  bool ok() const { return discrepancies.empty(); }
};

FundamentalReport fundamental_check(const SheafOfStructures& s, const OpenFilter& filter,
                                    const std::vector<Formula>& formulas,
                                    std::size_t max_depth = SIZE_MAX);

std::string format_environment(const SheafOfStructures& s, const Environment& env);

}  // namespace sheafwb
