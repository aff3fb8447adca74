#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "sheafwb/forcing.hpp"
#include "sheafwb/parser.hpp"

using sheafwb::testing::fixture_path;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = sheafwb::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sheaf(const std::string& name) { return fixture_path(name + ".sheaf"); }
std::string site(const std::string& name) { return fixture_path(name + ".site"); }

}  // namespace

TEST_CASE("truthval on S2") {
  const auto r = run({"--sheaf", sheaf("S2"), "truthval", "~R(s)"});
  CHECK(r.code == 0);
  CHECK(r.out == "{}\n");
  CHECK(run({"--sheaf", sheaf("S2"), "truthval", "R(s) | ~R(s)"}).out == "{q}\n");
  CHECK(run({"--sheaf", sheaf("S2"), "truthval", "--open", "q", "R(s)"}).out == "{q}\n");
}

TEST_CASE("hierarchy counts on P2") {
  const auto r = run({"--site", site("P2"), "hierarchy", "--alpha", "2", "--counts"});
  CHECK(r.code == 0);
  CHECK(r.out == "p: 3\nq: 2\n");
  const auto m = run({"--site", site("P2"), "--format", "machine", "hierarchy", "--alpha", "2", "--counts"});
  CHECK(m.out == "count\tp\t3\ncount\tq\t2\n");
}

TEST_CASE("force reports excluded-middle failure") {
  const auto r = run({"--sheaf", sheaf("S2"), "force", "--at", "p", "R(s) | ~R(s)"});
  CHECK(r.code == 0);
  CHECK(r.out == "not forced\n");
  CHECK(run({"--sheaf", sheaf("S2"), "force", "--at", "p", "~~R(s)"}).out == "forced\n");
  CHECK(run({"--sheaf", sheaf("S2"), "--format", "machine", "force", "--at", "q", "R(s)"}).out ==
        "forced\ttrue\n");
}

TEST_CASE("truthset and --section bindings") {
  const auto r = run({"--sheaf", sheaf("P2_func"), "--section", "x=q:1", "truthset", "exists y. E(x, y)"});
  CHECK(r.code == 0);
  CHECK(r.out == "{q}\n");
  const auto bad = run({"--sheaf", sheaf("P2_func"), "--section", "x=q:9", "truthset", "E(x, x)"});
  CHECK(bad.code == 2);
  CHECK(run({"--sheaf", sheaf("P2_func"), "--section", "oops", "truthset", "E(x, x)"}).code == 2);
}

TEST_CASE("cli results reproduce through the library") {
  const auto doc = sheafwb::load_sheaf(sheaf("P2_func"));
  const auto f = sheafwb::parse_formula("E(s, t) | ~E(s, t)", doc.sheaf.signature()).formula;
  const sheafwb::Environment env{{"s", doc.sections.at("s")}, {"t", doc.sections.at("t")}};
  const auto value = sheafwb::truth_value(doc.sheaf, doc.sheaf.site().whole(), f, env);
  CHECK(run({"--sheaf", sheaf("P2_func"), "truthval", "E(s, t) | ~E(s, t)"}).out ==
        doc.sheaf.site().format(value) + "\n");
}

TEST_CASE("goedel") {
  CHECK(run({"goedel", "exists x. R(x)"}).out == "~~(exists x. ~~R(x))\n");
  CHECK(run({"--sheaf", sheaf("S2"), "goedel", "R(s) & R(s)"}).out == "~~R(s) & ~~R(s)\n");
  CHECK(run({"--sheaf", sheaf("S2"), "goedel", "Q(s)"}).code == 2);
}

TEST_CASE("validate") {
  const auto ok = run({"--sheaf", sheaf("S2"), "validate"});
  CHECK(ok.code == 0);
  CHECK(ok.out == "valid\n");
  const auto bad = run({"--sheaf", sheaf("S2_open_violation"), "validate"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("relation-openness") != std::string::npos);
}

TEST_CASE("collapse with the fundamental check") {
  const auto r = run({"--sheaf", sheaf("S2"), "collapse", "--point", "q", "--check-fundamental", "--depth", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("base: {q}\ncarrier: 1\n") == 0);
  CHECK(r.out.find("fundamental: ok") != std::string::npos);
  const auto p = run({"--sheaf", sheaf("S2"), "collapse", "--point", "p", "--check-fundamental", "--depth", "1"});
  CHECK(p.code == 1);
  CHECK(p.out.find("generic: failed") != std::string::npos);
  CHECK(run({"--sheaf", sheaf("S2"), "collapse", "--point", "p"}).code == 0);
}

TEST_CASE("classifier, chi-check, axioms, cohen-demo") {
  const auto c = run({"--site", site("P2"), "--format", "machine", "classifier", "--node", "p"});
  CHECK(c.code == 0);
  CHECK(c.out.find("members\t3\n") == 0);
  const auto chi = run({"--site", site("P1"), "chi-check", "--k", "2", "--node", "m"});
  CHECK(chi.code == 0);
  CHECK(chi.out.find("chi bijection: verified") != std::string::npos);
  CHECK(chi.out.find("no surjection: verified") != std::string::npos);
  CHECK(run({"--site", site("P1"), "chi-check", "--k", "5", "--node", "m"}).code == 2);
  const auto ax = run({"--site", site("P2"), "axioms", "--alpha", "1", "--axiom", "extensionality"});
  CHECK(ax.code == 0);
  CHECK(ax.out.find("extensionality: ok") == 0);
  CHECK(run({"--site", site("P2"), "axioms", "--axiom", "choice"}).code == 2);
  const auto demo = run({"--seed", "4", "cohen-demo", "--steps", "5"});
  CHECK(demo.code == 0);
  CHECK(demo.out.find("verified") != std::string::npos);
}

TEST_CASE("reports are deterministic") {
  const std::vector<std::vector<std::string>> commands{
      {"--site", site("Pv"), "hierarchy", "--alpha", "2"},
      {"--seed", "9", "cohen-demo", "--steps", "6"},
      {"--sheaf", sheaf("Pv_grow"), "collapse", "--point", "b", "--check-fundamental", "--depth", "1"},
  };
  for (const auto& args : commands) {
    const auto a = run(args), b = run(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("input errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--sheaf", sheaf("missing"), "validate"}).code == 2);
  CHECK(run({"--sheaf", sheaf("S2"), "force", "--at", "p", "R(s"}).code == 2);
  CHECK(run({"--sheaf", sheaf("S2"), "force", "--at", "zz", "R(s)"}).code == 2);
  CHECK(run({"--sheaf", sheaf("S2"), "force", "--at", "p", "R(t)"}).code == 2);
  CHECK(run({"--site", site("P2"), "hierarchy", "--alpha", "9"}).code == 2);
  CHECK(run({"--site", site("P2"), "hierarchy", "--alpha", "-1"}).code == 2);
  CHECK(run({"--format", "xml", "goedel", "R(x)"}).code == 2);
  const auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("hierarchy") != std::string::npos);
}
