#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "sheafwb/axioms.hpp"
#include "sheafwb/classifier.hpp"
#include "sheafwb/cohen.hpp"
#include "sheafwb/constructions.hpp"
#include "sheafwb/error.hpp"
#include "sheafwb/forcing.hpp"
#include "sheafwb/hfset.hpp"
#include "sheafwb/hierarchy.hpp"
#include "sheafwb/membership_sheaf.hpp"
#include "sheafwb/parser.hpp"

using namespace sheafwb;
using sheafwb::testing::fixture_site;

namespace {

oracle::OSet to_oset(Universe& u, VSet f) {
  oracle::OSet out{u.base(f), {}};
  for (NodeId q : u.site().basic(u.base(f)).members()) {
    auto& members = out.graph[q];
    for (VSet g : u.at(f, q)) members.insert(to_oset(u, g));
  }
  return out;
}

HFSet hf(const std::string& text) { return parse_hfset(text); }

Formula membership(const std::string& text) {
  return parse_formula(text, MembershipSheaf::signature()).formula;
}

std::size_t forced_members(Universe& u, VSet f) { return u.at(f, u.base(f)).size(); }

}  // namespace

TEST_CASE("build_hierarchy examples") {
  Universe p2(fixture_site("P2"));
  const NodeId p = p2.site().index("p"), q = p2.site().index("q");
  const Hierarchy h = build_hierarchy(p2, 2);
  CHECK(h.level(0, p).empty());
  CHECK(h.level(1, p).size() == 1);
  CHECK(h.level(2, p).size() == 3);
  CHECK(h.level(2, q).size() == 2);
  Universe p1(fixture_site("P1"));
  CHECK(build_hierarchy(p1, 2).top(0).size() == 2);
  CHECK_THROWS_AS(build_hierarchy(p2, 4), GuardExceeded);
}

TEST_CASE("build_hierarchy matches an independent enumeration") {
  for (const auto& [name, alpha] : std::vector<std::pair<std::string, std::size_t>>{
           {"P1", 3}, {"P2", 3}, {"Pv", 2}, {"cycle", 2}}) {
    const Site site = fixture_site(name);
    Universe u(site);
    const Hierarchy h = build_hierarchy(u, alpha);
    const auto expected = oracle::hierarchy(site, alpha);
    for (std::size_t a = 0; a <= alpha; ++a) {
      for (NodeId p = 0; p < site.size(); ++p) {
        std::set<oracle::OSet> got;
        for (VSet f : h.level(a, p)) got.insert(to_oset(u, f));
        CHECK_MESSAGE(got == expected[a][p], name << " alpha " << a << " node " << site.name(p));
        CHECK(got.size() == h.level(a, p).size());
        if (a > 0) {
          // Cumulativity, with the previous level listed first.
          for (std::size_t i = 0; i < h.level(a - 1, p).size(); ++i) {
            CHECK(h.level(a, p)[i] == h.level(a - 1, p)[i]);
          }
        }
      }
    }
  }
}

TEST_CASE("restrict examples") {
  Universe u(fixture_site("P2"));
  const NodeId p = u.site().index("p"), q = u.site().index("q");
  const Hierarchy h = build_hierarchy(u, 2);
  for (VSet f : h.top(p)) CHECK(u.restrict(f, p) == f);
  const VSet third = h.level(2, p)[2];
  VSet nonempty_q{};
  for (VSet g : h.level(2, q)) {
    if (!u.at(g, q).empty()) nonempty_q = g;
  }
  CHECK(u.restrict(third, q) == nonempty_q);
  CHECK(u.restrict(u.empty(p), q) == u.empty(q));
  CHECK_THROWS_AS(u.restrict(u.empty(q), p), InvalidArgument);
}

TEST_CASE("membership examples and monotonicity") {
  Universe u(fixture_site("P2"));
  const NodeId p = u.site().index("p"), q = u.site().index("q");
  const VSet e = u.empty(p);
  const VSet one = hat_embed(u, hf("{{}}"), p);
  CHECK(u.member(e, one, p));
  CHECK(u.member(e, one, q));
  const Hierarchy h = build_hierarchy(u, 3);
  for (VSet a : h.level(2, p)) {
    CHECK_FALSE(u.member(a, e, p));
    for (VSet f : h.top(p)) {
      const bool at_p = u.member(a, f, p);
      const auto expect = to_oset(u, f).graph[p].count(to_oset(u, a)) > 0;
      CHECK(at_p == expect);
      if (at_p) CHECK(u.member(a, f, q));
    }
  }
}

TEST_CASE("rank examples") {
  Universe u(fixture_site("P2"));
  const NodeId p = u.site().index("p"), q = u.site().index("q");
  CHECK(u.rank(u.empty(p)) == 0);
  CHECK(u.rank(hat_embed(u, hf("{{}}"), p)) == 1);
  const Hierarchy h = build_hierarchy(u, 3);
  for (VSet f : h.top(p)) {
    for (NodeId r : {p, q}) {
      for (VSet g : u.at(f, r)) CHECK(u.rank(g) < u.rank(f));
    }
    CHECK(u.rank(u.restrict(f, q)) <= u.rank(f));
  }
}

TEST_CASE("hat_embed examples") {
  Universe u(fixture_site("P2"));
  const NodeId p = u.site().index("p"), q = u.site().index("q");
  CHECK(hat_embed(u, HFSet(), p) == u.empty(p));
  const VSet one = hat_embed(u, hf("{{}}"), p);
  CHECK(u.at(one, p) == std::vector<VSet>{u.empty(p)});
  CHECK(u.at(one, q) == std::vector<VSet>{u.empty(q)});
  CHECK(hat_embed(u, hf("{{}}"), p) != hat_embed(u, hf("{{{}}}"), p));
}

TEST_CASE("hat_embed lemmas on HF sets of rank at most 2") {
  for (const auto& name : {"P2", "Pv", "P1", "cycle"}) {
    Universe u(fixture_site(name));
    const Site& site = u.site();
    const auto sets = sets_of_rank_at_most(2);
    for (NodeId p = 0; p < site.size(); ++p) {
      std::set<VSet> images;
      for (const auto& a : sets) {
        const VSet ha = hat_embed(u, a, p);
        images.insert(ha);
        for (NodeId q : site.basic(p).members()) CHECK(u.restrict(ha, q) == hat_embed(u, a, q));
        for (const auto& b : sets) CHECK(a.contains(b) == u.member(hat_embed(u, b, p), ha, p));
        if (site.is_isolated(p)) CHECK(collapse_iso(u, p, ha) == a);
      }
      CHECK(images.size() == sets.size());
    }
  }
}

TEST_CASE("collapse_iso examples") {
  Universe p1(fixture_site("P1"));
  const Hierarchy h = build_hierarchy(p1, 2);
  std::set<HFSet> got;
  for (VSet f : h.top(0)) got.insert(collapse_iso(p1, 0, f));
  CHECK(got == std::set<HFSet>{hf("{}"), hf("{{}}")});
  CHECK(collapse_iso(p1, 0, p1.empty(0)) == HFSet());
  Universe p2(fixture_site("P2"));
  CHECK_THROWS_AS(collapse_iso(p2, p2.site().index("p"), p2.empty(p2.site().index("p"))), InvalidArgument);
}

TEST_CASE("suc examples") {
  Universe u(fixture_site("P2"));
  const NodeId p = u.site().index("p");
  CHECK(suc(u, u.empty(p)) == hat_embed(u, hf("{{}}"), p));
  for (std::size_t n = 0; n <= 2; ++n) {
    CHECK(suc(u, hat_embed(u, HFSet::von_neumann(n), p)) == hat_embed(u, HFSet::von_neumann(n + 1), p));
  }
  const Hierarchy h = build_hierarchy(u, 2);
  const Formula law = membership("forall x. ((In(x, s) -> (x = f | In(x, f))) & ((x = f | In(x, f)) -> In(x, s)))");
  for (VSet f : h.top(p)) {
    const VSet s = suc(u, f);
    CHECK(u.rank(s) == u.rank(f) + 1);
    const auto ms = MembershipSheaf::from_seeds(u, {s});
    const Environment env{{"s", ms.section(s)}, {"f", ms.section(f)}};
    for (NodeId q : u.site().basic(p).members()) CHECK(forces_at(ms.sheaf(), q, law, env));
  }
}

TEST_CASE("pairs and products") {
  Universe u(fixture_site("P2"));
  const NodeId p = u.site().index("p"), q = u.site().index("q");
  const VSet e = u.empty(p);
  CHECK(pair_set(u, e, e) == hat_embed(u, hf("{{}}"), p));
  CHECK_THROWS_AS(pair_set(u, e, u.empty(q)), InvalidArgument);

  const auto small = sets_of_rank_at_most(1);
  for (const auto& a : small) {
    for (const auto& b : small) {
      CHECK(hat_embed(u, HFSet::ordered_pair(a, b), p) ==
            ordered_pair(u, hat_embed(u, a, p), hat_embed(u, b, p)));
    }
  }

  const Hierarchy h = build_hierarchy(u, 2);
  const Formula law = membership(
      "forall x. ((In(x, z) -> (x = sf | x = sfg)) & ((x = sf | x = sfg) -> In(x, z)))");
  for (VSet f : h.top(p)) {
    for (VSet g : h.top(p)) {
      const VSet z = ordered_pair(u, f, g);
      const auto ms = MembershipSheaf::from_seeds(u, {z});
      const Environment env{{"z", ms.section(z)},
                            {"sf", ms.section(singleton(u, f))},
                            {"sfg", ms.section(pair_set(u, f, g))}};
      for (NodeId r : {p, q}) CHECK(forces_at(ms.sheaf(), r, law, env));

      // Product membership: both components, at every node.
      const VSet prod = product(u, f, g);
      for (NodeId r : {p, q}) {
        std::set<VSet> expect;
        for (VSet a : u.at(f, r)) {
          for (VSet b : u.at(g, r)) expect.insert(ordered_pair(u, a, b));
        }
        const auto& got = u.at(prod, r);
        CHECK(std::set<VSet>(got.begin(), got.end()) == expect);
      }
    }
  }
}

TEST_CASE("union, comprehension, power") {
  Universe u(fixture_site("P2"));
  const NodeId p = u.site().index("p");
  CHECK(union_set(u, hat_embed(u, hf("{{{}}}"), p)) == hat_embed(u, hf("{{}}"), p));

  const VSet z = hat_embed(u, hf("{{},{{}}}"), p);
  const auto ms = MembershipSheaf::from_seeds(u, {z});
  const VSet y = comprehension_set(ms, z, "x", membership("exists y. In(y, x)"));
  CHECK(y == hat_embed(u, hf("{{{}}}"), p));

  // The empty set has one subset; {0} has three forced subsets at p, matching V_2(p).
  CHECK(forced_members(u, power_object(u, u.empty(p))) == 1);
  const VSet power_one = power_object(u, hat_embed(u, hf("{{}}"), p));
  CHECK(forced_members(u, power_one) == 3);
  const Hierarchy h = build_hierarchy(u, 2);
  const auto& members = u.at(power_one, p);
  CHECK(std::set<VSet>(members.begin(), members.end()) ==
        std::set<VSet>(h.top(p).begin(), h.top(p).end()));
}

TEST_CASE("in_sheaf examples") {
  Universe u(fixture_site("P2"));
  const NodeId p = u.site().index("p"), q = u.site().index("q");
  const MembershipSheaf ms = in_sheaf(u, 2);
  CHECK(ms.sheaf().fiber_size(p) == 3);
  CHECK(ms.sheaf().fiber_size(q) == 2);
  CHECK(validate_sheaf(ms.sheaf()).ok());
  const Formula in = membership("In(a, f)");
  for (NodeId x : {p, q}) {
    for (VSet a : ms.carrier(x)) {
      for (VSet f : ms.carrier(x)) {
        const Environment env{{"a", ms.section(a)}, {"f", ms.section(f)}};
        CHECK(forces_at(ms.sheaf(), x, in, env) == u.member(a, f, x));
      }
    }
  }
}

TEST_CASE("axiom_check examples") {
  for (const auto& name : {"P2", "Pv"}) {
    Universe u(fixture_site(name));
    for (std::size_t alpha = 1; alpha <= 2; ++alpha) {
      for (Axiom a : all_axioms()) {
        const auto report = axiom_check(u, alpha, a);
        CHECK_MESSAGE(report.ok(), name << " alpha " << alpha << " " << to_string(a));
        CHECK(report.checks > 0);
      }
    }
  }
  Universe p1(fixture_site("P1"));
  CHECK_FALSE(axiom_check(p1, 0, Axiom::Existence).ok());
  CHECK(parse_axiom("foundation-variant") == Axiom::FoundationVariant);
  CHECK_FALSE(parse_axiom("choice").has_value());
}

TEST_CASE("omega_classifier examples") {
  Universe p2(fixture_site("P2"));
  CHECK(forced_members(p2, omega_classifier(p2, p2.site().index("p"))) == 3);
  CHECK(forced_members(p2, omega_classifier(p2, p2.site().index("q"))) == 2);
  Universe p1(fixture_site("P1"));
  CHECK(forced_members(p1, omega_classifier(p1, 0)) == 2);
  for (const auto& name : {"Pv", "cycle"}) {
    const Site site = fixture_site(name);
    Universe u(site);
    for (NodeId x = 0; x < site.size(); ++x) {
      CHECK(forced_members(u, omega_classifier(u, x)) == oracle::count_up_sets_above(site, x));
    }
  }
}

TEST_CASE("chi examples") {
  Universe p2(fixture_site("P2"));
  const NodeId p = p2.site().index("p");
  const auto r2 = chi_check(p2, p, 1);
  CHECK(r2.ok());
  CHECK(r2.g_members == 3);
  CHECK(r2.exp_members == 3);
  Universe p1(fixture_site("P1"));
  const auto r1 = chi_check(p1, 0, 1);
  CHECK(r1.ok());
  CHECK(r1.g_members == 2);
  CHECK(r1.exp_members == 2);
  const auto r12 = chi_check(p1, 0, 2);
  CHECK(r12.ok());
  CHECK(r12.g_members == 4);
  CHECK_THROWS_AS(chi_check(p1, 0, 3), GuardExceeded);

  // chi of the empty subset sends every n to the empty up-set.
  const VSet zero = hat_embed(p2, HFSet(), p);
  const VSet chi = chi_char(p2, p2.empty(p), 1);
  CHECK(chi == singleton(p2, ordered_pair(p2, zero, p2.empty(p))));
}

TEST_CASE("no_surjection examples") {
  Universe p1(fixture_site("P1"));
  const auto r1 = no_surjection_check(p1, 0, 1);
  CHECK(r1.ok());
  CHECK(r1.functions == 2);
  Universe p2(fixture_site("P2"));
  CHECK(no_surjection_check(p2, p2.site().index("p"), 1).ok());
  const auto r0 = no_surjection_check(p1, 0, 0);
  CHECK(r0.ok());
  CHECK(r0.functions == 1);
}

TEST_CASE("the functions criterion matches the forced function formula") {
  for (const auto& name : {"P2", "P1"}) {
    Universe u(fixture_site(name));
    const Hierarchy h = build_hierarchy(u, 2);
    const Formula is_function = function_formula();
    for (NodeId p = 0; p < u.site().size(); ++p) {
      for (VSet a : h.top(p)) {
        for (VSet b : h.top(p)) {
          const VSet prod = product(u, a, b);
          const auto candidates = enumerate_coherent(u, p, [&](NodeId q) { return u.at(prod, q); });
          std::vector<VSet> seeds = candidates;
          seeds.push_back(a);
          seeds.push_back(b);
          const auto ms = MembershipSheaf::from_seeds(u, seeds);
          Forcer forcer(ms.sheaf());
          for (VSet f : candidates) {
            const Environment env{{"f", ms.section(f)}, {"A", ms.section(a)}, {"B", ms.section(b)}};
            CHECK_MESSAGE(is_function_fiberwise(u, f, a, b) == forcer.forces_at(p, is_function, env),
                          u.describe(f));
          }
          const auto functions = enumerate_functions(u, a, b);
          for (VSet f : functions) CHECK(is_function_fiberwise(u, f, a, b));
          std::size_t fiberwise = 0;
          for (VSet f : candidates) fiberwise += is_function_fiberwise(u, f, a, b) ? 1 : 0;
          CHECK(fiberwise == functions.size());
        }
      }
    }
  }
}

TEST_CASE("separating_extension examples") {
  const Condition s = separating_extension({}, "H", "M");
  CHECK(s == Condition{{{"H", 0}, true}, {{"M", 0}, false}});
  const Condition t{{{"H", 0}, false}, {{"M", 0}, true}};
  const Condition s2 = separating_extension(t, "H", "M");
  CHECK(s2.at({"H", 1}));
  CHECK_FALSE(s2.at({"M", 1}));
  CHECK(extends(s2, t));
  CHECK_THROWS_AS(separating_extension({}, "H", "H"), InvalidArgument);
}

TEST_CASE("separating_extension on random conditions") {
  std::mt19937_64 rng(2024);
  const std::vector<std::string> labels{"A", "B", "C", "D", "E"};
  for (int trial = 0; trial < 1000; ++trial) {
    Condition t;
    const std::size_t entries = rng() % 21;
    while (t.size() < entries) {
      t[{labels[rng() % labels.size()], static_cast<unsigned>(rng() % 8)}] = rng() % 2;
    }
    const std::string h = labels[rng() % labels.size()];
    std::string m = h;
    while (m == h) m = labels[rng() % labels.size()];
    const Condition s = separating_extension(t, h, m);
    CHECK(extends(s, t));
    CHECK(s.size() == t.size() + 2);
    unsigned n = 0;
    while (t.count({h, n}) || t.count({m, n})) ++n;
    CHECK(s.at({h, n}));
    CHECK_FALSE(s.at({m, n}));
  }
}
