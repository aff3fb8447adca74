#pragma once

#include <string>
#include <vector>

#include "sheafwb/sheaf_io.hpp"
#include "sheafwb/site.hpp"

namespace sheafwb::testing {

std::string fixture_path(const std::string& name);
Site fixture_site(const std::string& name);       // e.g. "P2"
SheafDocument fixture_sheaf(const std::string& name);  // e.g. "S2"
// Every sheaf fixture under fixtures/.
std::vector<std::string> sheaf_fixture_names();

}  // namespace sheafwb::testing
