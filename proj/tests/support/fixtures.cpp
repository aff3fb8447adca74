#include "fixtures.hpp"

namespace sheafwb::testing {

std::string fixture_path(const std::string& name) { return std::string(SHEAFWB_FIXTURES_DIR) + "/" + name; }

Site fixture_site(const std::string& name) { return load_site(fixture_path(name + ".site")); }

SheafDocument fixture_sheaf(const std::string& name) { return load_sheaf(fixture_path(name + ".sheaf")); }

std::vector<std::string> sheaf_fixture_names() {
  return {"P1", "S2", "P2_func", "Pv_witness", "Pv_grow", "cycle"};
}

}  // namespace sheafwb::testing
