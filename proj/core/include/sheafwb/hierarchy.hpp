#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "sheafwb/vset.hpp"

namespace sheafwb {

struct HierarchyOptions {
  std::size_t max_alpha = 3;
  std::size_t max_nodes = 3;
  // Largest candidate list whose subsets are enumerated at a single node.
  std::size_t max_candidates = 20;
};

// Every coherent f based at `base` with f(q) a subset of candidates(q) for q in [base).
// Nodes are filled in top-down order and subsets in increasing bitmask order.
std::vector<VSet> enumerate_coherent(Universe& u, NodeId base,
                                     const std::function<std::vector<VSet>(NodeId)>& candidates,
                                     std::size_t max_candidates = 20);

// V_0, ..., V_alpha at every node. Each level lists the previous level first, then the new
// sets in enumeration order.
class Hierarchy {
 public:
  Hierarchy(std::size_t alpha, std::vector<std::vector<std::vector<VSet>>> levels)
      : alpha_(alpha), levels_(std::move(levels)) {}

  std::size_t alpha() const { return alpha_; }
  const std::vector<VSet>& level(std::size_t beta, NodeId p) const { return levels_.at(beta).at(p); }
  const std::vector<VSet>& top(NodeId p) const { return level(alpha_, p); }

 private:
  std::size_t alpha_;
  std::vector<std::vector<std::vector<VSet>>> levels_;
};

Hierarchy build_hierarchy(Universe& u, std::size_t alpha, const HierarchyOptions& options = {});

}  // namespace sheafwb
