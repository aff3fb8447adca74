#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sheafwb {

using NodeId = std::size_t;

inline constexpr std::size_t kMaxSiteNodes = 64;

// A set of nodes of one site, bit-indexed by declaration order.
class NodeSet {
 public:
  constexpr NodeSet() = default;
  constexpr explicit NodeSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr NodeSet single(NodeId x) { return NodeSet(std::uint64_t{1} << x); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(NodeId x) const { return (bits_ >> x) & 1U; }
  constexpr bool subset_of(NodeSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(NodeSet other) const { return (bits_ & other.bits_) != 0; }

  constexpr NodeSet& insert(NodeId x) {
    bits_ |= std::uint64_t{1} << x;
    return *this;
  }

  friend constexpr NodeSet operator&(NodeSet a, NodeSet b) { return NodeSet(a.bits_ & b.bits_); }
  friend constexpr NodeSet operator|(NodeSet a, NodeSet b) { return NodeSet(a.bits_ | b.bits_); }
  // Relative complement a \ b.
  friend constexpr NodeSet operator-(NodeSet a, NodeSet b) { return NodeSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(NodeSet, NodeSet) = default;
  friend constexpr auto operator<=>(NodeSet a, NodeSet b) { return a.bits_ <=> b.bits_; }

  // Members in increasing node order.
  std::vector<NodeId> members() const {
    std::vector<NodeId> out;
    out.reserve(size());
    for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
      out.push_back(static_cast<NodeId>(std::countr_zero(rest)));
    }
    return out;
  }

 private:
  std::uint64_t bits_ = 0;
};

// An up-closed node set. Only a Site hands these out, so the invariant holds by construction.
class OpenSet {
 public:
  constexpr OpenSet() = default;

  constexpr NodeSet nodes() const { return nodes_; }
  constexpr std::uint64_t bits() const { return nodes_.bits(); }
  constexpr bool empty() const { return nodes_.empty(); }
  constexpr std::size_t size() const { return nodes_.size(); }
  constexpr bool contains(NodeId x) const { return nodes_.contains(x); }
  constexpr bool subset_of(OpenSet other) const { return nodes_.subset_of(other.nodes_); }
  std::vector<NodeId> members() const { return nodes_.members(); }

  friend constexpr bool operator==(OpenSet, OpenSet) = default;
  friend constexpr auto operator<=>(OpenSet a, OpenSet b) { return a.nodes_ <=> b.nodes_; }

 private:
  friend class Site;
  constexpr explicit OpenSet(NodeSet nodes) : nodes_(nodes) {}

  NodeSet nodes_;
};

// A finite preorder together with its Alexandrov topology: the opens are the up-sets.
class Site {
 public:
  // Takes the reflexive-transitive closure of `le`, which may list covers only.
  static Site from_relation(std::vector<std::string> names,
                            const std::vector<std::pair<std::string, std::string>>& le);

  // `up[x]` must be exactly {y : x <= y}; reflexivity and transitivity are checked.
  static Site from_up_sets(std::vector<std::string> names, std::vector<NodeSet> up);

  std::size_t size() const { return names_.size(); }
  const std::string& name(NodeId x) const { return names_.at(x); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<NodeId> find(std::string_view name) const;
  NodeId index(std::string_view name) const;  // throws InvalidArgument

  bool leq(NodeId x, NodeId y) const { return up_.at(x).contains(y); }
  NodeSet all_nodes() const;
  // The basic open [x) = {y : x <= y}.
  OpenSet basic(NodeId x) const { return OpenSet(up_.at(x)); }
  OpenSet whole() const { return OpenSet(all_nodes()); }
  OpenSet empty_open() const { return OpenSet(); }

  bool is_open(NodeSet s) const;
  OpenSet open(NodeSet s) const;  // throws InvalidArgument unless s is up-closed
  // Nodes named in `names`; throws on unknown identifiers.
  NodeSet node_set(const std::vector<std::string>& names) const;

  OpenSet up_closure(NodeSet seed) const;
  OpenSet interior(NodeSet subset) const;

  // Heyting operations relative to an open ambient space.
  OpenSet meet(OpenSet ambient, OpenSet u, OpenSet v) const;
  OpenSet join(OpenSet ambient, OpenSet u, OpenSet v) const;
  OpenSet negation(OpenSet ambient, OpenSet u) const;
  OpenSet implication(OpenSet ambient, OpenSet u, OpenSet v) const;

  // True iff every nonempty basic open inside w meets u.
  bool is_dense(OpenSet u, OpenSet w) const;

  // All opens sorted by bit encoding. Refuses sites above `max_nodes`.
  std::vector<OpenSet> enumerate_opens(std::size_t max_nodes = 12) const;
  // All opens contained in `ambient`, sorted by bit encoding.
  std::vector<OpenSet> opens_within(OpenSet ambient, std::size_t max_nodes = 12) const;

  // [x) = {x}: the node sees no other point above it.
  bool is_isolated(NodeId x) const { return up_.at(x) == NodeSet::single(x); }
  // Nodes ordered so that y precedes x whenever x < y strictly; ties by declaration order.
  std::vector<NodeId> top_down_order() const;

  std::string format(NodeSet s) const;
  std::string format(OpenSet u) const { return format(u.nodes()); }

 private:
  Site(std::vector<std::string> names, std::vector<NodeSet> up);
  void check_known(NodeSet s) const;

  std::vector<std::string> names_;
  std::vector<NodeSet> up_;
  std::unordered_map<std::string, NodeId> index_;
};

// Site text: `node <ident>` and `le <ident> <ident>` lines, `#` comments.
Site parse_site(std::string_view text);
Site load_site(const std::string& path);

}  // namespace sheafwb
