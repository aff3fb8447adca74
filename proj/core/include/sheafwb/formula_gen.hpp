#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sheafwb/formula.hpp"

namespace sheafwb {

// Seeded random formulas over a signature and a fixed variable pool.
class FormulaGenerator {
 public:
  FormulaGenerator(Signature sig, std::vector<std::string> variables, std::uint64_t seed);

  Term random_term(std::size_t max_depth = 1);
  Formula random_atom();
  // Depth at most `max_depth`; quantifiers bind names from the variable pool.
  Formula random(std::size_t max_depth);

  std::mt19937_64& engine() { return rng_; }

 private:
  std::size_t pick(std::size_t n);

  Signature sig_;
  std::vector<std::string> variables_;
  std::vector<std::string> relation_names_;
  std::vector<std::string> function_names_;
  std::vector<std::string> constant_names_;
  std::mt19937_64 rng_;
};

// Every formula of depth <= max_depth built from `atoms` with all connectives and
// with quantifiers over `binders`. Grows as O(n^2) per level; keep inputs tiny.
std::vector<Formula> enumerate_formulas(const std::vector<Formula>& atoms,
                                        const std::vector<std::string>& binders,
                                        std::size_t max_depth);

}  // namespace sheafwb
