#include "sheafwb/cohen.hpp"

#include "sheafwb/error.hpp"

namespace sheafwb {

Condition separating_extension(const Condition& t, const std::string& h, const std::string& m) {
  if (h == m) throw InvalidArgument("cannot separate a label from itself");
  unsigned n = 0;
  while (t.count({h, n}) || t.count({m, n})) ++n;
  Condition s = t;
  s.emplace(std::make_pair(h, n), true);
  s.emplace(std::make_pair(m, n), false);
  return s;
}

bool extends(const Condition& s, const Condition& t) {
  for (const auto& [key, value] : t) {
    auto it = s.find(key);
    if (it == s.end() || it->second != value) return false;
  }
  return true;
}

}  // namespace sheafwb
