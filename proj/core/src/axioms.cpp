#include "sheafwb/axioms.hpp"

#include "sheafwb/constructions.hpp"
#include "sheafwb/membership_sheaf.hpp"
#include "sheafwb/parser.hpp"

namespace sheafwb {

namespace {

Formula membership_formula(const std::string& text) {
  return parse_formula(text, MembershipSheaf::signature()).formula;
}

std::string iff(const std::string& a, const std::string& b) {
  return "((" + a + ") -> (" + b + ")) & ((" + b + ") -> (" + a + "))";
}

const char* kExistence = "exists x. forall y. ~In(y, x)";
const char* kExtensionality =
    "forall x. forall y. ((forall z. (In(z, x) -> In(z, y))) & (forall z. (In(z, y) -> In(z, x))))"
    " -> x = y";
const char* kFoundation =
    "~exists x. ~((exists y. In(y, x)) -> exists y. (In(y, x) & ~exists z. (In(z, x) & In(z, y))))";

// Sentence checks over the membership sheaf on V_alpha.
void check_sentence(Universe& u, const Hierarchy& h, const char* text, AxiomReport& report) {
  const MembershipSheaf ms = MembershipSheaf::from_hierarchy(u, h);
  const Formula f = membership_formula(text);
  Forcer forcer(ms.sheaf());
  for (NodeId p = 0; p < u.site().size(); ++p) {
    ++report.checks;
    if (!forcer.forces_at(p, f)) report.failures.push_back("not forced at " + u.site().name(p));
  }
}

struct WitnessCase {
  NodeId node;
  Environment env;  // filled in once the evaluation sheaf exists
  std::vector<std::pair<std::string, VSet>> bindings;
  std::string description;
};

void check_witnesses(Universe& u, const Hierarchy& h, const Formula& f,
                     std::vector<WitnessCase> cases, AxiomReport& report) {
  std::vector<VSet> seeds;
  for (NodeId p = 0; p < u.site().size(); ++p) {
    seeds.insert(seeds.end(), h.top(p).begin(), h.top(p).end());
  }
  for (const auto& c : cases) {
    for (const auto& [name, v] : c.bindings) seeds.push_back(v);
  }
  const MembershipSheaf ms = MembershipSheaf::from_seeds(u, seeds);
  Forcer forcer(ms.sheaf());
  for (auto& c : cases) {
    ++report.checks;
    for (const auto& [name, v] : c.bindings) c.env.insert_or_assign(name, ms.section(v));
    if (!forcer.forces_at(c.node, f, c.env)) {
      report.failures.push_back(c.description + " at " + u.site().name(c.node));
    }
  }
}

}  // namespace

std::string to_string(Axiom a) {
  switch (a) {
    case Axiom::Existence: return "existence";
    case Axiom::Extensionality: return "extensionality";
    case Axiom::FoundationVariant: return "foundation-variant";
    case Axiom::Pairing: return "pairing";
    case Axiom::Union: return "union";
    case Axiom::Power: return "power";
    case Axiom::Comprehension: return "comprehension";
    case Axiom::Replacement: return "replacement";
  }
  return "unknown";
}

std::vector<Axiom> all_axioms() {
  return {Axiom::Existence, Axiom::Extensionality, Axiom::FoundationVariant, Axiom::Pairing,
          Axiom::Union,     Axiom::Power,          Axiom::Comprehension,     Axiom::Replacement};
}

std::optional<Axiom> parse_axiom(const std::string& name) {
  for (Axiom a : all_axioms()) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

AxiomReport axiom_check(Universe& u, std::size_t alpha, Axiom axiom,
                        const HierarchyOptions& options) {
  AxiomReport report{axiom, 0, {}};
  const Hierarchy h = build_hierarchy(u, alpha, options);
  const std::size_t n = u.site().size();
  auto label = [&](VSet v) { return u.label(v); };
  std::vector<WitnessCase> cases;

  switch (axiom) {
    case Axiom::Existence:
      check_sentence(u, h, kExistence, report);
      for (NodeId p = 0; p < n; ++p) {
        ++report.checks;
        for (NodeId q : u.site().basic(p).members()) {
          if (!u.at(u.empty(p), q).empty()) report.failures.push_back("empty set has members");
        }
      }
      return report;
    case Axiom::Extensionality:
      check_sentence(u, h, kExtensionality, report);
      return report;
    case Axiom::FoundationVariant:
      check_sentence(u, h, kFoundation, report);
      return report;
    case Axiom::Pairing: {
      const Formula f = membership_formula("forall w. " + iff("In(w, z)", "w = x | w = y"));
      for (NodeId p = 0; p < n; ++p) {
        for (VSet x : h.top(p)) {
          for (VSet y : h.top(p)) {
            const VSet z = pair_set(u, x, y);
            cases.push_back({p, {}, {{"x", x}, {"y", y}, {"z", z}},
                             "pairing x=" + label(x) + " y=" + label(y)});
          }
        }
      }
      check_witnesses(u, h, f, std::move(cases), report);
      return report;
    }
    case Axiom::Union: {
      const Formula f =
          membership_formula("forall w. " + iff("In(w, a)", "exists y. (In(y, F) & In(w, y))"));
      for (NodeId p = 0; p < n; ++p) {
        for (VSet family : h.top(p)) {
          cases.push_back({p, {}, {{"F", family}, {"a", union_set(u, family)}},
                           "union F=" + label(family)});
        }
      }
      check_witnesses(u, h, f, std::move(cases), report);
      return report;
    }
    case Axiom::Power: {
      const Formula f =
          membership_formula("forall g. " + iff("In(g, P)", "forall w. (In(w, g) -> In(w, f))"));
      for (NodeId p = 0; p < n; ++p) {
        for (VSet x : h.top(p)) {
          cases.push_back({p, {}, {{"f", x}, {"P", power_object(u, x, options.max_candidates)}},
                           "power f=" + label(x)});
        }
      }
      check_witnesses(u, h, f, std::move(cases), report);
      return report;
    }
    case Axiom::Comprehension: {
      const MembershipSheaf base = MembershipSheaf::from_hierarchy(u, h);
      const std::vector<std::string> conditions = {"exists w. In(w, x)", "~exists w. In(w, x)",
                                                   "forall w. (In(w, x) -> exists v. In(v, w))"};
      for (const auto& cond : conditions) {
        const Formula phi = membership_formula(cond);
        const Formula f =
            membership_formula("forall x. " + iff("In(x, y)", "In(x, z) & (" + cond + ")"));
        std::vector<WitnessCase> local;
        for (NodeId p = 0; p < n; ++p) {
          for (VSet z : h.top(p)) {
            const VSet y = comprehension_set(base, z, "x", phi);
            local.push_back({p, {}, {{"z", z}, {"y", y}},
                             "comprehension [" + cond + "] z=" + label(z)});
          }
        }
        check_witnesses(u, h, f, std::move(local), report);
      }
      return report;
    }
    case Axiom::Replacement: {
      const std::string graph = "forall w. " + iff("In(w, y)", "w = x");
      const Formula phi = membership_formula(graph);
      const Formula f =
          membership_formula("forall y. " + iff("In(y, B)", "exists x. (In(x, A) & " + graph + ")"));
      std::vector<VSet> seeds;
      for (NodeId p = 0; p < n; ++p) {
        for (VSet x : h.top(p)) {
          seeds.push_back(x);
          seeds.push_back(singleton(u, x));
        }
      }
      const MembershipSheaf images = MembershipSheaf::from_seeds(u, seeds);
      for (NodeId p = 0; p < n; ++p) {
        for (VSet a : h.top(p)) {
          const VSet b = replacement_set(images, a, "x", "y", phi);
          cases.push_back({p, {}, {{"A", a}, {"B", b}}, "replacement A=" + label(a)});
        }
      }
      check_witnesses(u, h, f, std::move(cases), report);
      return report;
    }
  }
  return report;
}

}  // namespace sheafwb
