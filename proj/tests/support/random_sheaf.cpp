#include "random_sheaf.hpp"

#include <numeric>
#include <string>
#include <vector>

namespace sheafwb::testing {

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

OpenSet random_open(std::mt19937_64& rng, const Site& site) {
  NodeSet seed;
  for (NodeId x = 0; x < site.size(); ++x) {
    if (coin(rng, 0.4)) seed.insert(x);
  }
  return site.up_closure(seed);
}

NodeId find_root(std::vector<NodeId>& parent, NodeId a) {
  while (parent[a] != a) a = parent[a] = parent[parent[a]];
  return a;
}

}  // namespace

Site random_site(std::mt19937_64& rng, std::size_t max_nodes) {
  const std::size_t n = uniform(rng, 1, max_nodes);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("n" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> le;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      // Mostly forward edges keep the order mostly antisymmetric; rare back edges make cycles.
      if ((i < j && coin(rng, 0.45)) || (i > j && coin(rng, 0.05))) le.emplace_back(names[i], names[j]);
    }
  }
  return Site::from_relation(names, le);
}

SheafOfStructures random_sheaf(std::mt19937_64& rng, const RandomSheafOptions& options) {
  Site site = random_site(rng, options.max_nodes);
  const std::size_t n = site.size();
  const std::size_t labels = uniform(rng, 1, options.max_labels);
  const bool with_constant = options.with_constant && coin(rng);

  std::vector<OpenSet> birth(labels);
  for (std::size_t l = 0; l < labels; ++l) {
    birth[l] = (l == 0 && with_constant) ? site.whole() : random_open(rng, site);
  }
  struct Merge {
    std::size_t a, b;
    OpenSet where;
  };
  std::vector<Merge> merges;
  for (std::size_t i = uniform(rng, 0, labels); i > 0; --i) {
    merges.push_back({uniform(rng, 0, labels - 1), uniform(rng, 0, labels - 1), random_open(rng, site)});
  }

  // class_of[x][l]: representative label of l at x, or labels when l is not born at x.
  std::vector<std::vector<std::size_t>> class_of(n, std::vector<std::size_t>(labels, labels));
  for (NodeId x = 0; x < n; ++x) {
    std::vector<NodeId> parent(labels);
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& m : merges) {
      if (m.where.contains(x) && birth[m.a].contains(x) && birth[m.b].contains(x)) {
        const auto ra = find_root(parent, m.a), rb = find_root(parent, m.b);
        parent[std::max(ra, rb)] = std::min(ra, rb);
      }
    }
    for (std::size_t l = 0; l < labels; ++l) {
      if (birth[l].contains(x)) class_of[x][l] = find_root(parent, l);
    }
  }

  SheafBuilder b(site);
  std::vector<std::vector<Element>> element(n, std::vector<Element>(labels, kNone));
  for (NodeId x = 0; x < n; ++x) {
    for (std::size_t l = 0; l < labels; ++l) {
      if (class_of[x][l] == l) element[x][l] = b.add_element(x, "e" + std::to_string(l));
    }
  }
  auto elem = [&](NodeId x, std::size_t l) { return element[x][class_of[x][l]]; };
  for (NodeId x = 0; x < n; ++x) {
    for (NodeId y = 0; y < n; ++y) {
      if (!site.leq(x, y)) continue;
      for (std::size_t l = 0; l < labels; ++l) {
        if (class_of[x][l] == l) b.set_transition(x, y, elem(x, l), elem(y, l));
      }
    }
  }

  b.declare_relation("R", 1);
  b.declare_relation("E", 2);
  for (std::size_t l = 0; l < labels; ++l) {
    if (!coin(rng)) continue;
    const OpenSet where = random_open(rng, site);
    for (NodeId x : where.members()) {
      if (birth[l].contains(x)) b.add_tuple("R", x, {elem(x, l)});
    }
  }
  for (std::size_t l1 = 0; l1 < labels; ++l1) {
    for (std::size_t l2 = 0; l2 < labels; ++l2) {
      if (!coin(rng, 0.35)) continue;
      const OpenSet where = random_open(rng, site);
      for (NodeId x : where.members()) {
        if (birth[l1].contains(x) && birth[l2].contains(x)) b.add_tuple("E", x, {elem(x, l1), elem(x, l2)});
      }
    }
  }
  if (with_constant) {
    b.declare_constant("c");
    for (NodeId x = 0; x < n; ++x) b.set_constant("c", x, elem(x, 0));
  }
  return b.build(false);
}

}  // namespace sheafwb::testing
