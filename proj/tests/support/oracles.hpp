#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sheafwb/forcing.hpp"
#include "sheafwb/formula.hpp"
#include "sheafwb/sheaf.hpp"
#include "sheafwb/site.hpp"

// Reference implementations kept deliberately naive and independent of the library's
// evaluators. They only read sites and sheaves through their public accessors.
namespace sheafwb::oracle {

using Nodes = std::set<NodeId>;

Nodes up_of(const Site& site, const Nodes& seed);
Nodes interior_of(const Site& site, const Nodes& subset);
Nodes to_nodes(OpenSet u);
bool is_up_set(const Site& site, const Nodes& s);
std::vector<Nodes> all_up_sets(const Site& site);
std::vector<Nodes> up_sets_within(const Site& site, const Nodes& ambient);

// Textbook Kripke forcing. A variable is bound to a germ (node, element) whose node lies
// below every evaluation point.
using Germs = std::map<std::string, std::pair<NodeId, Element>>;
bool kripke(const SheafOfStructures& s, NodeId x, const Formula& f, const Germs& rho);
// Binds each environment section through its value at x.
Germs germs_at(const Environment& env, NodeId x);

// Naive cumulative hierarchy: a variable set is its base plus a node-indexed member map.
struct OSet {
  NodeId base;
  std::map<NodeId, std::set<OSet>> graph;
  friend bool operator<(const OSet& a, const OSet& b) {
    return std::tie(a.base, a.graph) < std::tie(b.base, b.graph);
  }
  friend bool operator==(const OSet& a, const OSet& b) {
    return a.base == b.base && a.graph == b.graph;
  }
};
OSet restrict_oset(const Site& site, const OSet& f, NodeId q);
// levels[alpha][p] = V_alpha(p) as a set.
std::vector<std::vector<std::set<OSet>>> hierarchy(const Site& site, std::size_t alpha);

// Up-sets of [p), counted directly.
std::size_t count_up_sets_above(const Site& site, NodeId p);

}  // namespace sheafwb::oracle
