#include "sheafwb/site.hpp"

#include <algorithm>
#include <sstream>

#include "sheafwb/error.hpp"
#include "text_util.hpp"

namespace sheafwb {

Site::Site(std::vector<std::string> names, std::vector<NodeSet> up)
    : names_(std::move(names)), up_(std::move(up)) {
  if (names_.size() > kMaxSiteNodes) {
    throw InvalidArgument("site has " + std::to_string(names_.size()) + " nodes; at most " +
                          std::to_string(kMaxSiteNodes) + " are supported");
  }
  for (NodeId x = 0; x < names_.size(); ++x) {
    if (names_[x].empty()) throw InvalidArgument("empty node identifier");
    if (!index_.emplace(names_[x], x).second) {
      throw InvalidArgument("duplicate node identifier '" + names_[x] + "'");
    }
  }
}

Site Site::from_relation(std::vector<std::string> names,
                         const std::vector<std::pair<std::string, std::string>>& le) {
  const std::size_t n = names.size();
  std::vector<NodeSet> up(n);
  for (NodeId x = 0; x < n; ++x) up[x].insert(x);
  Site probe(names, up);
  for (const auto& [lo, hi] : le) up[probe.index(lo)].insert(probe.index(hi));
  // Warshall closure on bit rows.
  for (NodeId k = 0; k < n; ++k) {
    for (NodeId i = 0; i < n; ++i) {
      if (up[i].contains(k)) up[i] = up[i] | up[k];
    }
  }
  return Site(std::move(names), std::move(up));
}

Site Site::from_up_sets(std::vector<std::string> names, std::vector<NodeSet> up) {
  if (up.size() != names.size()) throw InvalidArgument("order rows do not match node count");
  Site site(std::move(names), std::move(up));
  const NodeSet all = site.all_nodes();
  for (NodeId x = 0; x < site.size(); ++x) {
    if (!site.up_[x].subset_of(all)) throw InvalidArgument("order mentions unknown nodes");
    if (!site.up_[x].contains(x)) {
      throw InvalidArgument("order is not reflexive at '" + site.names_[x] + "'");
    }
    for (NodeId y : site.up_[x].members()) {
      if (!site.up_[y].subset_of(site.up_[x])) {
        throw InvalidArgument("order is not transitive through '" + site.names_[x] + "' <= '" +
                              site.names_[y] + "'");
      }
    }
  }
  return site;
}

std::optional<NodeId> Site::find(std::string_view name) const {
  const auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeId Site::index(std::string_view name) const {
  if (auto x = find(name)) return *x;
  throw InvalidArgument("unknown node '" + std::string(name) + "'");
}

NodeSet Site::all_nodes() const {
  const std::size_t n = size();
  return NodeSet(n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
}

void Site::check_known(NodeSet s) const {
  if (!s.subset_of(all_nodes())) throw InvalidArgument("node set mentions unknown nodes");
}

NodeSet Site::node_set(const std::vector<std::string>& names) const {
  NodeSet s;
  for (const auto& name : names) s.insert(index(name));
  return s;
}

bool Site::is_open(NodeSet s) const {
  if (!s.subset_of(all_nodes())) return false;
  for (NodeId x : s.members()) {
    if (!up_[x].subset_of(s)) return false;
  }
  return true;
}

OpenSet Site::open(NodeSet s) const {
  check_known(s);
  if (!is_open(s)) throw InvalidArgument("node set " + format(s) + " is not up-closed");
  return OpenSet(s);
}

OpenSet Site::up_closure(NodeSet seed) const {
  check_known(seed);
  NodeSet out;
  for (NodeId x : seed.members()) out = out | up_[x];
  return OpenSet(out);
}

OpenSet Site::interior(NodeSet subset) const {
  check_known(subset);
  NodeSet out;
  for (NodeId x : subset.members()) {
    if (up_[x].subset_of(subset)) out.insert(x);
  }
  return OpenSet(out);
}

namespace {

void require_within(const Site& site, OpenSet ambient, OpenSet u) {
  if (!u.subset_of(ambient)) {
    throw InvalidArgument("open " + site.format(u) + " is not contained in ambient " +
                          site.format(ambient));
  }
}

}  // namespace

OpenSet Site::meet(OpenSet ambient, OpenSet u, OpenSet v) const {
  require_within(*this, ambient, u);
  require_within(*this, ambient, v);
  return OpenSet(u.nodes() & v.nodes());
}

OpenSet Site::join(OpenSet ambient, OpenSet u, OpenSet v) const {
  require_within(*this, ambient, u);
  require_within(*this, ambient, v);
  return OpenSet(u.nodes() | v.nodes());
}

OpenSet Site::negation(OpenSet ambient, OpenSet u) const {
  require_within(*this, ambient, u);
  return interior(ambient.nodes() - u.nodes());
}

OpenSet Site::implication(OpenSet ambient, OpenSet u, OpenSet v) const {
  require_within(*this, ambient, u);
  require_within(*this, ambient, v);
  return interior((ambient.nodes() - u.nodes()) | v.nodes());
}

bool Site::is_dense(OpenSet u, OpenSet w) const {
  for (NodeId x : w.members()) {
    if (!up_[x].intersects(u.nodes())) return false;
  }
  return true;
}

std::vector<OpenSet> Site::enumerate_opens(std::size_t max_nodes) const {
  return opens_within(whole(), max_nodes);
}

std::vector<OpenSet> Site::opens_within(OpenSet ambient, std::size_t max_nodes) const {
  if (ambient.size() > max_nodes) {
    throw GuardExceeded("open enumeration over " + std::to_string(ambient.size()) +
                        " nodes exceeds the bound of " + std::to_string(max_nodes));
  }
  // Walk the subsets of `ambient` in increasing bit order (submask enumeration, reversed).
  const std::uint64_t mask = ambient.bits();
  std::vector<OpenSet> out;
  std::uint64_t sub = 0;
  while (true) {
    if (is_open(NodeSet(sub))) out.push_back(OpenSet(NodeSet(sub)));
    if (sub == mask) break;
    sub = (sub - mask) & mask;
  }
  return out;
}

std::vector<NodeId> Site::top_down_order() const {
  std::vector<NodeId> order(size());
  for (NodeId x = 0; x < size(); ++x) order[x] = x;
  // Fewer successors means higher up; strictly larger nodes have strictly smaller up-sets.
  std::stable_sort(order.begin(), order.end(),
                   [this](NodeId a, NodeId b) { return up_[a].size() < up_[b].size(); });
  return order;
}

std::string Site::format(NodeSet s) const {
  std::string out = "{";
  bool first = true;
  for (NodeId x : s.members()) {
    if (!first) out += ',';
    out += x < size() ? names_[x] : ("#" + std::to_string(x));
    first = false;
  }
  return out + "}";
}

Site parse_site(std::string_view text) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> le;
  std::size_t line_no = 0;
  for (auto raw : detail::lines_of(text)) {
    ++line_no;
    const auto words = detail::split_ws(detail::strip_comment(raw));
    if (words.empty()) continue;
    if (words[0] == "node") {
      if (words.size() != 2) throw ParseError("expected `node <ident>`", line_no);
      if (std::find(names.begin(), names.end(), words[1]) != names.end()) {
        throw ParseError("duplicate node '" + words[1] + "'", line_no);
      }
      names.push_back(words[1]);
    } else if (words[0] == "le") {
      if (words.size() != 3) throw ParseError("expected `le <ident> <ident>`", line_no);
      for (std::size_t i = 1; i < 3; ++i) {
        if (std::find(names.begin(), names.end(), words[i]) == names.end()) {
          throw ParseError("unknown node '" + words[i] + "'", line_no);
        }
      }
      le.emplace_back(words[1], words[2]);
    } else {
      throw ParseError("unknown declaration '" + words[0] + "'", line_no);
    }
  }
  try {
    return Site::from_relation(std::move(names), le);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

Site load_site(const std::string& path) { return parse_site(detail::read_file(path)); }

}  // namespace sheafwb
