#include <benchmark/benchmark.h>

#include "sheafwb/classifier.hpp"
#include "sheafwb/hierarchy.hpp"
#include "sheafwb/vset.hpp"

namespace {

using namespace sheafwb;

Site chain(std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> le;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back("n" + std::to_string(i));
    if (i > 0) le.emplace_back(names[i - 1], names[i]);
  }
  return Site::from_relation(names, le);
}

void BM_BuildHierarchy(benchmark::State& state) {
  const Site site = chain(static_cast<std::size_t>(state.range(0)));
  const auto alpha = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    Universe u(site);
    benchmark::DoNotOptimize(build_hierarchy(u, alpha).top(0).size());
  }
}
BENCHMARK(BM_BuildHierarchy)->Args({1, 3})->Args({2, 2})->Args({2, 3})->Args({3, 2});

void BM_ChiCheck(benchmark::State& state) {
  const Site site = chain(static_cast<std::size_t>(state.range(0)));
  const auto k = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    Universe u(site);
    benchmark::DoNotOptimize(chi_check(u, 0, k).checks);
  }
}
BENCHMARK(BM_ChiCheck)->Args({1, 1})->Args({1, 2})->Args({2, 1});

}  // namespace
