#include "sheafwb/hfset.hpp"

#include <algorithm>

#include "sheafwb/error.hpp"

namespace sheafwb {

HFSet HFSet::of(std::vector<HFSet> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  HFSet out;
  out.members_ = std::move(members);
  return out;
}

HFSet HFSet::von_neumann(std::size_t n) {
  std::vector<HFSet> members;
  for (std::size_t i = 0; i < n; ++i) members.push_back(of(members));
  return of(std::move(members));
}

HFSet HFSet::pair(const HFSet& a, const HFSet& b) { return of({a, b}); }

HFSet HFSet::ordered_pair(const HFSet& a, const HFSet& b) {
  return pair(singleton(a), pair(a, b));
}

bool HFSet::contains(const HFSet& x) const {
  return std::binary_search(members_.begin(), members_.end(), x);
}

std::size_t HFSet::rank() const {
  std::size_t r = 0;
  for (const auto& m : members_) r = std::max(r, m.rank() + 1);
  return r;
}

std::strong_ordering operator<=>(const HFSet& a, const HFSet& b) {
  if (auto c = a.members_.size() <=> b.members_.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.members_.size(); ++i) {
    if (auto c = a.members_[i] <=> b.members_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::vector<HFSet> sets_of_rank_at_most(std::size_t k) {
  if (k > 4) throw GuardExceeded("sets of rank above 4 are not enumerated");
  std::vector<HFSet> level{HFSet()};
  for (std::size_t r = 0; r < k; ++r) {
    std::vector<HFSet> next;
    const std::size_t n = level.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<HFSet> members;
      for (std::size_t i = 0; i < n; ++i) {
        if ((mask >> i) & 1U) members.push_back(level[i]);
      }
      next.push_back(HFSet::of(std::move(members)));
    }
    level = std::move(next);
  }
  std::sort(level.begin(), level.end());
  return level;
}

std::string to_string(const HFSet& a) {
  std::string out = "{";
  for (std::size_t i = 0; i < a.members().size(); ++i) {
    if (i) out += ",";
    out += to_string(a.members()[i]);
  }
  return out + "}";
}

namespace {

HFSet parse_at(std::string_view text, std::size_t& i) {
  auto skip = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip();
  if (i >= text.size() || text[i] != '{') throw ParseError("expected '{'", 1, i + 1);
  ++i;
  std::vector<HFSet> members;
  skip();
  if (i < text.size() && text[i] == '}') {
    ++i;
    return HFSet();
  }
  while (true) {
    members.push_back(parse_at(text, i));
    skip();
    if (i < text.size() && text[i] == ',') {
      ++i;
      continue;
    }
    if (i < text.size() && text[i] == '}') {
      ++i;
      return HFSet::of(std::move(members));
    }
    throw ParseError("expected ',' or '}'", 1, i + 1);
  }
}

}  // namespace

HFSet parse_hfset(std::string_view text) {
  std::size_t i = 0;
  HFSet out = parse_at(text, i);
  while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n')) ++i;
  if (i != text.size()) throw ParseError("trailing characters after set", 1, i + 1);
  return out;
}

}  // namespace sheafwb
