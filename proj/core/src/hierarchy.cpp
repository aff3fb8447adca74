#include "sheafwb/hierarchy.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "sheafwb/error.hpp"

namespace sheafwb {

std::vector<VSet> enumerate_coherent(Universe& u, NodeId base,
                                     const std::function<std::vector<VSet>(NodeId)>& candidates,
                                     std::size_t max_candidates) {
  const Site& site = u.site();
  std::vector<NodeId> order;
  for (NodeId q : site.top_down_order()) {
    if (site.leq(base, q)) order.push_back(q);
  }
  std::vector<VSet> out;
  std::set<VSet> seen;
  Graph graph(site.size());
  std::vector<bool> assigned(site.size(), false);

  std::function<void(std::size_t)> fill = [&](std::size_t i) {
    if (i == order.size()) {
      if (!u.is_coherent(base, graph)) return;
      const VSet f = u.intern(base, graph);
      if (seen.insert(f).second) out.push_back(f);
      return;
    }
    const NodeId q = order[i];
    std::vector<VSet> allowed;
    for (VSet g : candidates(q)) {
      bool ok = true;
      for (NodeId r : site.basic(q).members()) {
        if (r == q || !assigned[r]) continue;
        const auto& chosen = graph[r];
        if (!std::binary_search(chosen.begin(), chosen.end(), u.restrict(g, r))) {
          ok = false;
          break;
        }
      }
      if (ok) allowed.push_back(g);
    }
    if (allowed.size() > max_candidates) {
      throw GuardExceeded("more than " + std::to_string(max_candidates) + " candidate members at " +
                          site.name(q));
    }
    assigned[q] = true;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << allowed.size()); ++mask) {
      graph[q].clear();
      for (std::size_t j = 0; j < allowed.size(); ++j) {
        if ((mask >> j) & 1U) graph[q].push_back(allowed[j]);
      }
      std::sort(graph[q].begin(), graph[q].end());
      fill(i + 1);
    }
    graph[q].clear();
    assigned[q] = false;
  };
  fill(0);
  return out;
}

Hierarchy build_hierarchy(Universe& u, std::size_t alpha, const HierarchyOptions& options) {
  const Site& site = u.site();
  if (alpha > options.max_alpha) {
    throw GuardExceeded("alpha " + std::to_string(alpha) + " exceeds the bound " +
                        std::to_string(options.max_alpha));
  }
  if (site.size() > options.max_nodes) {
    throw GuardExceeded("site has " + std::to_string(site.size()) + " nodes, bound is " +
                        std::to_string(options.max_nodes));
  }
  std::vector<std::vector<std::vector<VSet>>> levels;
  levels.emplace_back(site.size());
  for (std::size_t beta = 0; beta < alpha; ++beta) {
    const auto& prev = levels.back();
    std::vector<std::vector<VSet>> next(site.size());
    for (NodeId p = 0; p < site.size(); ++p) {
      auto fresh = enumerate_coherent(
          u, p, [&](NodeId q) { return prev[q]; }, options.max_candidates);
      std::set<VSet> found(fresh.begin(), fresh.end());
      for (VSet f : prev[p]) {
        if (!found.count(f)) {
          throw std::logic_error("cumulativity violated at " + site.name(p));
        }
      }
      next[p] = prev[p];
      std::set<VSet> old(prev[p].begin(), prev[p].end());
      for (VSet f : fresh) {
        if (!old.count(f)) next[p].push_back(f);
      }
    }
    levels.push_back(std::move(next));
  }
  return Hierarchy(alpha, std::move(levels));
}

}  // namespace sheafwb
