#include "sheafwb/classifier.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "sheafwb/constructions.hpp"
#include "sheafwb/error.hpp"
#include "sheafwb/membership_sheaf.hpp"
#include "sheafwb/parser.hpp"

namespace sheafwb {

namespace {

NodeId common_base(const Universe& u, VSet a, VSet b) {
  if (u.base(a) != u.base(b)) {
    throw InvalidArgument("base mismatch: " + u.label(a) + " and " + u.label(b));
  }
  return u.base(a);
}

bool contains(const std::vector<VSet>& sorted, VSet v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

// For each x in a(q): the y in b(q) with (x, y) in f(q). `ok` is false if f(q) holds anything
// outside a(q) x b(q).
struct FiberGraph {
  std::map<VSet, std::vector<VSet>> images;
  std::map<VSet, std::vector<VSet>> preimages;
  bool ok = true;
};

FiberGraph fiber_graph(Universe& u, VSet f, VSet a, VSet b, NodeId q) {
  FiberGraph g;
  std::map<VSet, std::pair<VSet, VSet>> decode;
  for (VSet x : u.at(a, q)) {
    for (VSet y : u.at(b, q)) decode.emplace(ordered_pair(u, x, y), std::make_pair(x, y));
  }
  for (VSet z : u.at(f, q)) {
    auto it = decode.find(z);
    if (it == decode.end()) {
      g.ok = false;
      continue;
    }
    g.images[it->second.first].push_back(it->second.second);
    g.preimages[it->second.second].push_back(it->second.first);
  }
  return g;
}

template <typename Check>
bool every_node(Universe& u, VSet f, VSet a, VSet b, const Check& check) {
  const NodeId p = common_base(u, a, b);
  if (u.base(f) != p) throw InvalidArgument("base mismatch for " + u.label(f));
  for (NodeId q : u.site().basic(p).members()) {
    if (!check(q, fiber_graph(u, f, a, b, q))) return false;
  }
  return true;
}

Formula membership(const std::string& text) {
  return parse_formula(text, MembershipSheaf::signature()).formula;
}

void guard(const Universe& u, std::size_t k, const ChiOptions& options) {
  if (k > options.max_k) {
    throw GuardExceeded("k = " + std::to_string(k) + " exceeds the bound " +
                        std::to_string(options.max_k));
  }
  if (u.site().size() > options.max_nodes) {
    throw GuardExceeded("site has " + std::to_string(u.site().size()) + " nodes, bound is " +
                        std::to_string(options.max_nodes));
  }
}

}  // namespace

VSet natural(Universe& u, std::size_t k, NodeId p) {
  return hat_embed(u, HFSet::von_neumann(k), p);
}

VSet truth_vset(Universe& u, NodeSet k, NodeId q) {
  Graph graph(u.site().size());
  for (NodeId r : u.site().basic(q).members()) {
    if (k.contains(r)) graph[r] = {natural(u, 0, r)};
  }
  return u.intern(q, std::move(graph));
}

VSet omega_classifier(Universe& u, NodeId p) { return power_object(u, natural(u, 1, p)); }

VSet subsets_of_natural(Universe& u, std::size_t k, NodeId p) {
  return power_object(u, natural(u, k, p));
}

VSet chi_char(Universe& u, VSet h, std::size_t k) {
  const Site& site = u.site();
  const NodeId p = u.base(h);
  Graph graph(site.size());
  for (NodeId q : site.basic(p).members()) {
    for (std::size_t n = 0; n < k; ++n) {
      NodeSet up;
      for (NodeId r : site.basic(q).members()) {
        if (contains(u.at(h, r), natural(u, n, r))) up.insert(r);
      }
      graph[q].push_back(ordered_pair(u, natural(u, n, q), truth_vset(u, up, q)));
    }
  }
  return u.intern(p, std::move(graph));
}

std::vector<VSet> enumerate_functions(Universe& u, VSet a, VSet b) {
  const Site& site = u.site();
  const NodeId p = common_base(u, a, b);
  std::vector<NodeId> order;
  for (NodeId q : site.top_down_order()) {
    if (site.leq(p, q)) order.push_back(q);
  }
  std::vector<std::map<VSet, VSet>> choice(site.size());
  std::vector<bool> assigned(site.size(), false);
  std::vector<VSet> out;
  std::set<VSet> seen;

  std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t i, std::size_t j) {
    if (i == order.size()) {
      Graph graph(site.size());
      for (NodeId q : order) {
        for (const auto& [x, y] : choice[q]) graph[q].push_back(ordered_pair(u, x, y));
      }
      for (auto& members : graph) std::sort(members.begin(), members.end());
      if (!u.is_coherent(p, graph)) return;
      const VSet f = u.intern(p, std::move(graph));
      if (seen.insert(f).second) out.push_back(f);
      return;
    }
    const NodeId q = order[i];
    const auto domain = u.at(a, q);
    if (j == domain.size()) {
      assigned[q] = true;
      fill(i + 1, 0);
      assigned[q] = false;
      return;
    }
    const VSet x = domain[j];
    for (VSet y : u.at(b, q)) {
      bool ok = true;
      for (NodeId r : site.basic(q).members()) {
        if (r == q || !assigned[r]) continue;
        auto it = choice[r].find(u.restrict(x, r));
        if (it == choice[r].end() || it->second != u.restrict(y, r)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      choice[q][x] = y;
      fill(i, j + 1);
      choice[q].erase(x);
    }
  };
  fill(0, 0);
  return out;
}

VSet function_space(Universe& u, VSet a, VSet b) {
  const NodeId p = common_base(u, a, b);
  Graph graph(u.site().size());
  for (NodeId q : u.site().basic(p).members()) {
    graph[q] = enumerate_functions(u, u.restrict(a, q), u.restrict(b, q));
  }
  return u.intern(p, std::move(graph));
}

bool is_function_fiberwise(Universe& u, VSet f, VSet a, VSet b) {
  return every_node(u, f, a, b, [&](NodeId q, const FiberGraph& g) {
    if (!g.ok) return false;
    for (VSet x : u.at(a, q)) {
      auto it = g.images.find(x);
      if (it == g.images.end() || it->second.size() != 1) return false;
    }
    return true;
  });
}

bool is_injective_fiberwise(Universe& u, VSet f, VSet a, VSet b) {
  return every_node(u, f, a, b, [&](NodeId, const FiberGraph& g) {
    for (const auto& [y, xs] : g.preimages) {
      if (xs.size() > 1) return false;
    }
    return true;
  });
}

bool is_surjective_fiberwise(Universe& u, VSet f, VSet a, VSet b) {
  return every_node(u, f, a, b, [&](NodeId q, const FiberGraph& g) {
    for (VSet y : u.at(b, q)) {
      if (!g.preimages.count(y)) return false;
    }
    return true;
  });
}

Formula function_formula() {
  return membership(
      "(forall x. (In(x, f) -> exists a. exists b. (In(a, A) & In(b, B) & Pair(x, a, b)))) & "
      "(forall x. forall a. forall b. (In(x, A) -> "
      "((exists y. (In(y, B) & exists z. (Pair(z, x, y) & In(z, f)))) & "
      "((In(a, B) & In(b, B) & (exists z. (Pair(z, x, a) & In(z, f))) & "
      "(exists z. (Pair(z, x, b) & In(z, f)))) -> a = b))))");
}

Formula injective_formula() {
  return membership(
      "forall x. forall w. forall y. ((In(x, A) & In(w, A) & "
      "(exists z. (Pair(z, x, y) & In(z, f))) & (exists z. (Pair(z, w, y) & In(z, f)))) -> x = w)");
}

Formula surjective_formula() {
  return membership("forall y. (In(y, B) -> exists x. (In(x, A) & exists z. (Pair(z, x, y) & In(z, f))))");
}

ChiReport chi_check(Universe& u, NodeId p, std::size_t k, const ChiOptions& options) {
  guard(u, k, options);
  const Site& site = u.site();
  ChiReport report;
  const VSet nat = natural(u, k, p);
  const VSet g = subsets_of_natural(u, k, p);
  const VSet omega = omega_classifier(u, p);
  const VSet exp = function_space(u, nat, omega);
  report.g_members = u.at(g, p).size();
  report.exp_members = u.at(exp, p).size();
  report.omega_members = u.at(omega, p).size();

  Graph graph(site.size());
  for (NodeId q : site.basic(p).members()) {
    for (VSet h : u.at(g, q)) {
      const VSet chi_h = chi_char(u, h, k);
      ++report.checks;
      if (!is_function_fiberwise(u, chi_h, u.restrict(nat, q), u.restrict(omega, q))) {
        report.failures.push_back("chi_H for H=" + u.label(h) + " is not a function k -> Omega");
      }
      graph[q].push_back(ordered_pair(u, h, chi_h));
    }
  }
  const VSet chi = u.intern(p, std::move(graph));

  auto fiber_check = [&](bool ok, const std::string& what) {
    ++report.checks;
    if (!ok) report.failures.push_back("chi is not " + what + " (fiberwise)");
  };
  fiber_check(is_function_fiberwise(u, chi, g, exp), "a function G -> Omega^k");
  fiber_check(is_injective_fiberwise(u, chi, g, exp), "injective");
  fiber_check(is_surjective_fiberwise(u, chi, g, exp), "surjective");

  const MembershipSheaf ms = MembershipSheaf::from_seeds(u, {chi, g, exp, nat, omega});
  Forcer forcer(ms.sheaf());
  const Environment env{{"f", ms.section(chi)}, {"A", ms.section(g)}, {"B", ms.section(exp)}};
  const std::pair<Formula, std::string> statements[] = {
      {function_formula(), "forced as a function"},
      {injective_formula(), "forced injective"},
      {surjective_formula(), "forced surjective"},
  };
  for (const auto& [formula, what] : statements) {
    ++report.checks;
    if (!forcer.forces_at(p, formula, env)) report.failures.push_back("chi is not " + what);
  }
  return report;
}

NoSurjectionReport no_surjection_check(Universe& u, NodeId p, std::size_t k,
                                       const ChiOptions& options) {
  guard(u, k, options);
  NoSurjectionReport report;
  const Formula is_function = function_formula();
  const Formula onto = surjective_formula();
  for (NodeId q : u.site().basic(p).members()) {
    const VSet nat = natural(u, k, q);
    const VSet g = subsets_of_natural(u, k, q);
    const auto functions = enumerate_functions(u, nat, g);
    report.functions += functions.size();
    std::vector<VSet> seeds = functions;
    seeds.push_back(nat);
    seeds.push_back(g);
    const MembershipSheaf ms = MembershipSheaf::from_seeds(u, seeds);
    Forcer forcer(ms.sheaf());
    for (VSet f : functions) {
      const Environment env{{"f", ms.section(f)}, {"A", ms.section(nat)}, {"B", ms.section(g)}};
      report.checks += 3;
      if (!forcer.forces_at(q, is_function, env)) {
        report.failures.push_back(u.label(f) + " is enumerated but not forced as a function");
      }
      if (is_surjective_fiberwise(u, f, nat, g)) {
        report.failures.push_back(u.label(f) + " is onto G_k at every node");
      }
      if (forcer.forces_at(q, onto, env)) {
        report.failures.push_back(u.label(f) + " is forced onto G_k at " + u.site().name(q));
      }
    }
  }
  return report;
}

}  // namespace sheafwb
