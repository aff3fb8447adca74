#include <benchmark/benchmark.h>

#include <random>

#include "sheafwb/forcing.hpp"
#include "sheafwb/formula_gen.hpp"
#include "sheafwb/sheaf.hpp"

namespace {

using namespace sheafwb;

// Chain of n nodes, fiber {0, .., m-1} everywhere, R growing along the chain.
SheafOfStructures chain_sheaf(std::size_t n, std::size_t m) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> le;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back("n" + std::to_string(i));
    if (i > 0) le.emplace_back(names[i - 1], names[i]);
  }
  SheafBuilder b(Site::from_relation(names, le));
  b.declare_relation("R", 1);
  b.declare_relation("E", 2);
  for (NodeId x = 0; x < n; ++x) {
    for (std::size_t a = 0; a < m; ++a) b.add_element(x, std::to_string(a));
    for (std::size_t a = 0; a < m && a <= x; ++a) b.add_tuple("R", x, {a});
    for (std::size_t a = 0; a + 1 < m && a < x; ++a) b.add_tuple("E", x, {a, a + 1});
  }
  return b.build();
}

std::vector<Formula> sample(const Signature& sig, std::size_t depth, std::size_t count) {
  FormulaGenerator gen(sig, {"x", "y"}, 42);
  std::vector<Formula> out;
  while (out.size() < count) {
    Formula f = gen.random(depth);
    if (free_variables(f).empty()) out.push_back(rename_apart(f));
  }
  return out;
}

void BM_TruthValueRecursive(benchmark::State& state) {
  const auto s = chain_sheaf(static_cast<std::size_t>(state.range(0)), 3);
  const auto formulas = sample(s.signature(), 4, 64);
  for (auto _ : state) {
    Forcer forcer(s);
    for (const auto& f : formulas) benchmark::DoNotOptimize(forcer.truth_value(s.site().whole(), f));
  }
}
BENCHMARK(BM_TruthValueRecursive)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_TruthValuePointwise(benchmark::State& state) {
  const auto s = chain_sheaf(static_cast<std::size_t>(state.range(0)), 3);
  const auto formulas = sample(s.signature(), 4, 64);
  for (auto _ : state) {
    Forcer forcer(s);
    for (const auto& f : formulas) benchmark::DoNotOptimize(forcer.truth_value_pointwise(s.site().whole(), f));
  }
}
BENCHMARK(BM_TruthValuePointwise)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_TruthValueExhaustive(benchmark::State& state) {
  const auto s = chain_sheaf(static_cast<std::size_t>(state.range(0)), 2);
  const auto formulas = sample(s.signature(), 3, 16);
  for (auto _ : state) {
    Forcer forcer(s);
    for (const auto& f : formulas) benchmark::DoNotOptimize(forcer.truth_value_exhaustive(s.site().whole(), f));
  }
}
BENCHMARK(BM_TruthValueExhaustive)->Arg(2)->Arg(3)->Arg(4);

}  // namespace
