#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sheafwb/hfset.hpp"
#include "sheafwb/site.hpp"

namespace sheafwb {

// Handle to a canonical variable set inside a Universe. Equal handles mean equal sets.
struct VSet {
  std::uint32_t id = 0;

  friend bool operator==(VSet, VSet) = default;
  friend auto operator<=>(VSet, VSet) = default;
};

// Node-indexed member lists; entries outside [base) are empty, each list sorted.
using Graph = std::vector<std::vector<VSet>>;

// Hash-consing table of variable sets over one site. Insert-only: handles stay valid and
// canonical for the universe's lifetime.
class Universe {
 public:
  explicit Universe(Site site);

  const Site& site() const { return site_; }
  std::size_t size() const { return entries_.size(); }

  // Sorts and deduplicates the member lists, then checks that every member at q has base q,
  // that nothing sits outside [base), and coherence: g in f(q), q <= r implies g|r in f(r).
  VSet intern(NodeId base, Graph graph);
  bool is_coherent(NodeId base, const Graph& graph);

  VSet empty(NodeId base);
  NodeId base(VSet f) const { return entry(f).base; }
  const Graph& graph(VSet f) const { return entry(f).graph; }
  // f(q); throws unless base(f) <= q.
  const std::vector<VSet>& at(VSet f, NodeId q) const;
  std::size_t rank(VSet f) const { return entry(f).rank; }

  VSet restrict(VSet f, NodeId q);
  // a|q in f(q); throws unless q lies above both bases.
  bool member(VSet a, VSet f, NodeId q);

  // "#id@node"
  std::string label(VSet f) const;
  // "#id@node {q:[#a,#b] ...}"
  std::string describe(VSet f) const;

  std::map<std::pair<HFSet, NodeId>, VSet>& hat_cache() { return hat_cache_; }

 private:
  struct Entry {
    NodeId base;
    Graph graph;
    std::size_t rank;
  };

  const Entry& entry(VSet f) const;
  void normalize(NodeId base, Graph& graph) const;
  VSet intern_normalized(NodeId base, Graph graph);

  Site site_;
  std::deque<Entry> entries_;  // stable references across inserts
  std::map<std::pair<NodeId, Graph>, VSet> index_;
  std::map<std::pair<std::uint32_t, NodeId>, VSet> restrict_cache_;
  std::map<std::pair<HFSet, NodeId>, VSet> hat_cache_;
};

}  // namespace sheafwb
