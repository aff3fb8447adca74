#pragma once

#include <cstdint>
#include <random>

#include "sheafwb/sheaf.hpp"

namespace sheafwb::testing {

struct RandomSheafOptions {
  std::size_t max_nodes = 4;
  std::size_t max_labels = 3;  // bounds every fiber
  bool with_constant = true;
};

// Random preorder on 1..max_nodes nodes.
Site random_site(std::mt19937_64& rng, std::size_t max_nodes);

// Random valid sheaf with a unary R, a binary E and optionally a constant c. Fibers are
// classes of labels born on up-sets and merged along growing equivalences.
SheafOfStructures random_sheaf(std::mt19937_64& rng, const RandomSheafOptions& options = {});

}  // namespace sheafwb::testing
