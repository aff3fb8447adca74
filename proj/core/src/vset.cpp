#include "sheafwb/vset.hpp"

#include <algorithm>

#include "sheafwb/error.hpp"

namespace sheafwb {

Universe::Universe(Site site) : site_(std::move(site)) {}

const Universe::Entry& Universe::entry(VSet f) const {
  if (f.id >= entries_.size()) throw InvalidArgument("unknown variable set #" + std::to_string(f.id));
  return entries_[f.id];
}

void Universe::normalize(NodeId base, Graph& graph) const {
  if (base >= site_.size()) throw InvalidArgument("unknown node");
  graph.resize(site_.size());
  for (NodeId q = 0; q < graph.size(); ++q) {
    auto& members = graph[q];
    if (!site_.leq(base, q) && !members.empty()) {
      throw InvalidArgument("members listed at " + site_.name(q) + ", outside [" +
                            site_.name(base) + ")");
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (VSet g : members) {
      if (entry(g).base != q) {
        throw InvalidArgument("member " + label(g) + " at " + site_.name(q) +
                              " is not based there");
      }
    }
  }
}

bool Universe::is_coherent(NodeId base, const Graph& graph) {
  for (NodeId q = 0; q < graph.size(); ++q) {
    if (!site_.leq(base, q)) continue;
    for (VSet g : graph[q]) {
      for (NodeId r : site_.basic(q).members()) {
        const auto& target = graph[r];
        if (!std::binary_search(target.begin(), target.end(), restrict(g, r))) return false;
      }
    }
  }
  return true;
}

VSet Universe::intern(NodeId base, Graph graph) {
  normalize(base, graph);
  if (!is_coherent(base, graph)) {
    throw InvalidArgument("incoherent variable set at " + site_.name(base));
  }
  return intern_normalized(base, std::move(graph));
}

VSet Universe::intern_normalized(NodeId base, Graph graph) {
  auto key = std::make_pair(base, graph);
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  std::size_t rank = 0;
  for (const auto& members : graph) {
    for (VSet g : members) rank = std::max(rank, entries_[g.id].rank + 1);
  }
  const VSet f{static_cast<std::uint32_t>(entries_.size())};
  entries_.push_back({base, std::move(graph), rank});
  index_.emplace(std::move(key), f);
  return f;
}

VSet Universe::empty(NodeId base) { return intern(base, Graph(site_.size())); }

const std::vector<VSet>& Universe::at(VSet f, NodeId q) const {
  const auto& e = entry(f);
  if (!site_.leq(e.base, q)) {
    throw InvalidArgument(site_.name(q) + " is not above the base of " + label(f));
  }
  return e.graph[q];
}

VSet Universe::restrict(VSet f, NodeId q) {
  const NodeId base = entry(f).base;
  if (base == q) return f;
  if (!site_.leq(base, q)) {
    throw InvalidArgument("cannot restrict " + label(f) + " to " + site_.name(q) +
                          ": not above its base");
  }
  if (auto it = restrict_cache_.find({f.id, q}); it != restrict_cache_.end()) return it->second;
  Graph graph(site_.size());
  for (NodeId r : site_.basic(q).members()) graph[r] = entries_[f.id].graph[r];
  const VSet out = intern_normalized(q, std::move(graph));
  restrict_cache_.emplace(std::make_pair(f.id, q), out);
  return out;
}

bool Universe::member(VSet a, VSet f, NodeId q) {
  if (!site_.leq(base(a), q) || !site_.leq(base(f), q)) {
    throw InvalidArgument("membership at " + site_.name(q) + " needs both bases below it");
  }
  const auto& members = entry(f).graph[q];
  return std::binary_search(members.begin(), members.end(), restrict(a, q));
}

std::string Universe::label(VSet f) const {
  return "#" + std::to_string(f.id) + "@" + site_.name(entry(f).base);
}

std::string Universe::describe(VSet f) const {
  const auto& e = entry(f);
  std::string out = label(f) + " {";
  bool first = true;
  for (NodeId q : site_.basic(e.base).members()) {
    if (!first) out += " ";
    first = false;
    out += site_.name(q) + ":[";
    for (std::size_t i = 0; i < e.graph[q].size(); ++i) {
      if (i) out += ",";
      out += "#" + std::to_string(e.graph[q][i].id);
    }
    out += "]";
  }
  return out + "}";
}

}  // namespace sheafwb
