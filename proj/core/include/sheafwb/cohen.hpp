#pragma once

#include <map>
#include <string>
#include <utility>

namespace sheafwb {

// Finite partial map (label, n) -> {0, 1}.
using Condition = std::map<std::pair<std::string, unsigned>, bool>;

// Extends t by (h, n) -> 1 and (m, n) -> 0 for the least n undefined in both rows.
// Throws InvalidArgument when h == m.
Condition separating_extension(const Condition& t, const std::string& h, const std::string& m);

bool extends(const Condition& s, const Condition& t);

}  // namespace sheafwb
