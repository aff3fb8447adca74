#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "random_sheaf.hpp"
#include "sheafwb/error.hpp"
#include "sheafwb/site.hpp"

using namespace sheafwb;
using sheafwb::testing::fixture_site;

namespace {

NodeSet nodes(const Site& s, std::vector<std::string> names) { return s.node_set(names); }
OpenSet open(const Site& s, std::vector<std::string> names) { return s.open(nodes(s, names)); }

}  // namespace

TEST_CASE("up_closure examples") {
  const Site p2 = fixture_site("P2");
  const Site pv = fixture_site("Pv");
  CHECK(p2.up_closure(nodes(p2, {"q"})) == open(p2, {"q"}));
  CHECK(p2.up_closure(nodes(p2, {"p"})) == open(p2, {"p", "q"}));
  CHECK(pv.up_closure(nodes(pv, {"a"})) == pv.whole());
  CHECK_THROWS_AS(p2.node_set({"zz"}), InvalidArgument);
}

TEST_CASE("interior examples") {
  const Site p2 = fixture_site("P2");
  CHECK(p2.interior(nodes(p2, {"p"})).empty());
  CHECK(p2.interior(nodes(p2, {"q"})) == open(p2, {"q"}));
  CHECK(p2.interior(nodes(p2, {"p", "q"})) == p2.whole());
}

TEST_CASE("Heyting operation examples") {
  const Site p2 = fixture_site("P2");
  const OpenSet all = p2.whole();
  CHECK(p2.negation(all, open(p2, {"q"})).empty());
  CHECK(p2.negation(all, p2.empty_open()) == all);
  CHECK(p2.implication(all, all, open(p2, {"q"})) == open(p2, {"q"}));
  CHECK_THROWS_AS(p2.negation(open(p2, {"q"}), all), InvalidArgument);
}

TEST_CASE("is_dense examples") {
  const Site p2 = fixture_site("P2");
  const Site pv = fixture_site("Pv");
  CHECK(p2.is_dense(open(p2, {"q"}), p2.whole()));
  CHECK(p2.is_dense(p2.empty_open(), p2.empty_open()));
  CHECK_FALSE(pv.is_dense(open(pv, {"b"}), pv.whole()));
  CHECK(pv.is_dense(open(pv, {"b", "c"}), pv.whole()));
}

TEST_CASE("enumerate_opens examples") {
  CHECK(fixture_site("P1").enumerate_opens().size() == 2);
  const Site p2 = fixture_site("P2");
  const auto opens = p2.enumerate_opens();
  REQUIRE(opens.size() == 3);
  CHECK(opens[0].empty());
  CHECK(opens[1] == open(p2, {"q"}));
  CHECK(opens[2] == p2.whole());
  CHECK(fixture_site("Pv").enumerate_opens().size() == 5);
  CHECK(fixture_site("cycle").enumerate_opens().size() == 2);
}

TEST_CASE("enumerate_opens guard") {
  std::vector<std::string> names;
  for (int i = 0; i < 13; ++i) names.push_back("x" + std::to_string(i));
  const Site big = Site::from_relation(names, {});
  CHECK_THROWS_AS(big.enumerate_opens(), GuardExceeded);
  CHECK(big.enumerate_opens(13).size() == (std::size_t{1} << 13));
}

TEST_CASE("site text parsing") {
  const Site s = parse_site("# comment\nnode a\nnode b\nnode c\nle a b\nle b c\n");
  CHECK(s.size() == 3);
  CHECK(s.leq(s.index("a"), s.index("c")));
  CHECK_FALSE(s.leq(s.index("c"), s.index("a")));
  const Site u = parse_site("node α\nnode β\nle α β\n");
  CHECK(u.leq(u.index("α"), u.index("β")));
  CHECK_THROWS_AS(parse_site("node a\nnode a\n"), ParseError);
  CHECK_THROWS_AS(parse_site("node a\nle a b\n"), ParseError);
  CHECK_THROWS_AS(parse_site("vertex a\n"), ParseError);
  try {
    parse_site("node a\n\nfrob a\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("from_up_sets rejects a non-transitive relation") {
  // a <= b, b <= c, but not a <= c.
  CHECK_THROWS_AS(Site::from_up_sets({"a", "b", "c"}, {NodeSet(0b011), NodeSet(0b110), NodeSet(0b100)}),
                  InvalidArgument);
}

TEST_CASE("closure, interior and Heyting laws on random small sites") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const Site site = sheafwb::testing::random_site(rng, 5);
    const auto opens = site.enumerate_opens();
    const OpenSet all = site.whole();
    CHECK(opens.size() == oracle::all_up_sets(site).size());
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << site.size()); ++bits) {
      const NodeSet s(bits);
      oracle::Nodes sn;
      for (NodeId x : s.members()) sn.insert(x);
      const OpenSet up = site.up_closure(s);
      CHECK(oracle::to_nodes(up) == oracle::up_of(site, sn));
      CHECK(site.up_closure(up.nodes()) == up);
      CHECK(s.subset_of(up.nodes()));
      const OpenSet in = site.interior(s);
      CHECK(oracle::to_nodes(in) == oracle::interior_of(site, sn));
      CHECK(site.interior(in.nodes()) == in);
      CHECK(in.nodes().subset_of(s));
      CHECK((site.interior(s).nodes() == s) == site.is_open(s));
    }
    for (OpenSet u : opens) {
      CHECK(site.negation(all, site.negation(all, site.negation(all, u))) == site.negation(all, u));
      for (OpenSet v : opens) {
        const OpenSet impl = site.implication(all, u, v);
        oracle::Nodes expect;
        for (NodeId x = 0; x < site.size(); ++x) {
          if (!u.contains(x) || v.contains(x)) expect.insert(x);
        }
        CHECK(oracle::to_nodes(impl) == oracle::interior_of(site, expect));
        CHECK(site.meet(all, u, v).nodes() == (u.nodes() & v.nodes()));
        CHECK(site.join(all, u, v).nodes() == (u.nodes() | v.nodes()));
        for (OpenSet w : opens) {
          const bool lhs = (w.nodes() & u.nodes()).subset_of(v.nodes());
          CHECK(lhs == w.subset_of(impl));
        }
        if (u.subset_of(v)) {
          bool dense = true;
          for (NodeId x : v.members()) dense = dense && site.basic(x).nodes().intersects(u.nodes());
          CHECK(site.is_dense(u, v) == dense);
        }
      }
    }
  }
}

TEST_CASE("top_down_order puts strictly larger nodes first") {
  const Site pv = fixture_site("Pv");
  const auto order = pv.top_down_order();
  REQUIRE(order.size() == 3);
  CHECK(order.back() == pv.index("a"));
}
