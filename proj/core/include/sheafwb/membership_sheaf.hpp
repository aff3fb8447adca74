#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "sheafwb/forcing.hpp"
#include "sheafwb/hierarchy.hpp"
#include "sheafwb/sheaf.hpp"
#include "sheafwb/vset.hpp"

namespace sheafwb {

// Variable sets as a sheaf of structures: the fiber at x is a set of variable sets based at x,
// transitions are restrictions, In(a, b) is membership and Pair(z, a, b) says z = (a, b).
// Carriers are transitive and closed under restriction, so formulas whose quantifiers
// range over them evaluate membership facts exactly.
class MembershipSheaf {
 public:
  // Fibers V_alpha(x).
  static MembershipSheaf from_hierarchy(Universe& u, const Hierarchy& h);
  // Fibers: the seeds, closed under restriction and under taking members.
  static MembershipSheaf from_seeds(Universe& u, const std::vector<VSet>& seeds);

  static Signature signature();

  Universe& universe() const { return *u_; }
  const SheafOfStructures& sheaf() const { return sheaf_; }
  const std::vector<VSet>& carrier(NodeId x) const { return carriers_.at(x); }

  // Index of f in the fiber at its base.
  std::optional<Element> element(VSet f) const;
  VSet vset(NodeId x, Element a) const { return carriers_.at(x).at(a); }
  // Principal section of f at its base; throws if f is not in the carrier.
  Section section(VSet f) const;

 private:
  MembershipSheaf(Universe& u, std::vector<std::vector<VSet>> carriers);

  Universe* u_;
  std::vector<std::vector<VSet>> carriers_;
  std::vector<std::map<VSet, Element>> index_;
  SheafOfStructures sheaf_;
};

MembershipSheaf in_sheaf(Universe& u, std::size_t alpha, const HierarchyOptions& options = {});

}  // namespace sheafwb
