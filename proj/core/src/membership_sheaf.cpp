#include "sheafwb/membership_sheaf.hpp"

#include <algorithm>
#include <set>

#include "sheafwb/constructions.hpp"
#include "sheafwb/error.hpp"

namespace sheafwb {

namespace {

SheafOfStructures build_sheaf(Universe& u, const std::vector<std::vector<VSet>>& carriers,
                              const std::vector<std::map<VSet, Element>>& index) {
  const Site& site = u.site();
  SheafBuilder b(site);
  b.declare_relation("In", 2);
  b.declare_relation("Pair", 3);
  for (NodeId x = 0; x < site.size(); ++x) {
    for (VSet f : carriers[x]) b.add_element(x, "#" + std::to_string(f.id));
  }
  for (NodeId x = 0; x < site.size(); ++x) {
    for (NodeId y : site.basic(x).members()) {
      for (Element a = 0; a < carriers[x].size(); ++a) {
        const VSet moved = u.restrict(carriers[x][a], y);
        b.set_transition(x, y, a, index[y].at(moved));
      }
    }
    const auto& c = carriers[x];
    for (Element f = 0; f < c.size(); ++f) {
      for (VSet g : u.at(c[f], x)) b.add_tuple("In", x, {index[x].at(g), f});
    }
    for (Element a = 0; a < c.size(); ++a) {
      for (Element d = 0; d < c.size(); ++d) {
        const VSet z = ordered_pair(u, c[a], c[d]);
        if (auto it = index[x].find(z); it != index[x].end()) {
          b.add_tuple("Pair", x, {it->second, a, d});
        }
      }
    }
  }
  return b.build(false);
}

}  // namespace

MembershipSheaf::MembershipSheaf(Universe& u, std::vector<std::vector<VSet>> carriers)
    : u_(&u), carriers_(std::move(carriers)), index_(carriers_.size()),
      sheaf_(SheafBuilder(u.site()).build()) {
  for (NodeId x = 0; x < carriers_.size(); ++x) {
    for (Element a = 0; a < carriers_[x].size(); ++a) index_[x].emplace(carriers_[x][a], a);
  }
  sheaf_ = build_sheaf(u, carriers_, index_);
}

Signature MembershipSheaf::signature() {
  Signature sig;
  sig.add_relation("In", 2);
  sig.add_relation("Pair", 3);
  return sig;
}

MembershipSheaf MembershipSheaf::from_hierarchy(Universe& u, const Hierarchy& h) {
  std::vector<std::vector<VSet>> carriers;
  for (NodeId x = 0; x < u.site().size(); ++x) carriers.push_back(h.top(x));
  return MembershipSheaf(u, std::move(carriers));
}

MembershipSheaf MembershipSheaf::from_seeds(Universe& u, const std::vector<VSet>& seeds) {
  const Site& site = u.site();
  std::vector<std::vector<VSet>> carriers(site.size());
  std::vector<std::set<VSet>> present(site.size());
  std::vector<VSet> stack(seeds.rbegin(), seeds.rend());
  while (!stack.empty()) {
    const VSet f = stack.back();
    stack.pop_back();
    const NodeId base = u.base(f);
    if (!present[base].insert(f).second) continue;
    carriers[base].push_back(f);
    std::vector<VSet> next;
    for (NodeId q : site.basic(base).members()) {
      next.push_back(u.restrict(f, q));
      for (VSet g : u.at(f, q)) next.push_back(g);
    }
    stack.insert(stack.end(), next.rbegin(), next.rend());
  }
  for (auto& c : carriers) std::sort(c.begin(), c.end());
  return MembershipSheaf(u, std::move(carriers));
}

std::optional<Element> MembershipSheaf::element(VSet f) const {
  const auto& idx = index_.at(u_->base(f));
  auto it = idx.find(f);
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

Section MembershipSheaf::section(VSet f) const {
  auto a = element(f);
  if (!a) throw InvalidArgument(u_->label(f) + " is not in the carrier");
  return principal_section(sheaf_, u_->base(f), *a);
}

MembershipSheaf in_sheaf(Universe& u, std::size_t alpha, const HierarchyOptions& options) {
  return MembershipSheaf::from_hierarchy(u, build_hierarchy(u, alpha, options));
}

}  // namespace sheafwb
