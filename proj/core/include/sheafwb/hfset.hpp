#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sheafwb {

// Hereditarily finite set, kept as a sorted duplicate-free list of members.
class HFSet {
 public:
  HFSet() = default;
  static HFSet of(std::vector<HFSet> members);
  static HFSet von_neumann(std::size_t n);
  static HFSet pair(const HFSet& a, const HFSet& b);
  static HFSet singleton(const HFSet& a) { return pair(a, a); }
  // Kuratowski pair {{a},{a,b}}.
  static HFSet ordered_pair(const HFSet& a, const HFSet& b);

  const std::vector<HFSet>& members() const { return members_; }
  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }
  bool contains(const HFSet& x) const;
  // 0 for the empty set, otherwise one more than the largest member rank.
  std::size_t rank() const;

  friend bool operator==(const HFSet& a, const HFSet& b) { return a.members_ == b.members_; }
  friend std::strong_ordering operator<=>(const HFSet& a, const HFSet& b);

 private:
  std::vector<HFSet> members_;
};

// All sets of rank <= k, sorted (1, 2, 4, 16, 65536 sets for k = 0..4).
std::vector<HFSet> sets_of_rank_at_most(std::size_t k);

// Brace notation: {} , {{}} , {{},{{}}}.
std::string to_string(const HFSet& a);
HFSet parse_hfset(std::string_view text);

}  // namespace sheafwb
