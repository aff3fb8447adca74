#include "cli.hpp"

#include <algorithm>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "sheafwb/axioms.hpp"
#include "sheafwb/classifier.hpp"
#include "sheafwb/cohen.hpp"
#include "sheafwb/constructions.hpp"
#include "sheafwb/error.hpp"
#include "sheafwb/forcing.hpp"
#include "sheafwb/formula_gen.hpp"
#include "sheafwb/generic.hpp"
#include "sheafwb/hierarchy.hpp"
#include "sheafwb/parser.hpp"
#include "sheafwb/sheaf_io.hpp"
#include "sheafwb/translate.hpp"

namespace sheafwb::cli {

namespace {

class Printer {
 public:
  Printer(std::ostream& out, OutputFormat format) : out_(out), format_(format) {}

  bool machine() const { return format_ == OutputFormat::Machine; }

  // One fact: `key<TAB>values...` in machine mode, `plain` otherwise.
  void line(const std::vector<std::string>& machine_fields, const std::string& plain) {
    if (machine()) {
      for (std::size_t i = 0; i < machine_fields.size(); ++i) {
        out_ << (i ? "\t" : "") << machine_fields[i];
      }
      out_ << '\n';
    } else {
      out_ << plain << '\n';
    }
  }

 private:
  std::ostream& out_;
  OutputFormat format_;
};

SheafDocument load_document(const RunConfig& c) {
  if (c.sheaf_path.empty()) throw InvalidArgument("this subcommand needs --sheaf");
  return load_sheaf(c.sheaf_path);
}

Site load_site_for(const RunConfig& c) {
  if (!c.site_path.empty()) return load_site(c.site_path);
  if (!c.sheaf_path.empty()) return load_sheaf(c.sheaf_path).sheaf.site();
  throw InvalidArgument("this subcommand needs --site or --sheaf");
}

NodeId node_of(const Site& site, const std::string& name) {
  if (name.empty()) throw InvalidArgument("missing --node");
  return site.index(name);
}

// Named sections from the file plus --section x=node:elem principal sections.
Environment environment_for(const RunConfig& c, const SheafDocument& doc) {
  Environment env(doc.sections.begin(), doc.sections.end());
  for (const auto& binding : c.sections) {
    const auto eq = binding.find('=');
    const auto colon = binding.find(':', eq == std::string::npos ? 0 : eq);
    if (eq == std::string::npos || colon == std::string::npos) {
      throw InvalidArgument("--section expects x=node:elem, got '" + binding + "'");
    }
    const NodeId x = doc.sheaf.site().index(binding.substr(eq + 1, colon - eq - 1));
    const std::string elem = binding.substr(colon + 1);
    auto a = doc.sheaf.find_element(x, elem);
    if (!a) throw InvalidArgument("unknown element '" + elem + "' at " + doc.sheaf.site().name(x));
    env.insert_or_assign(binding.substr(0, eq), principal_section(doc.sheaf, x, *a));
  }
  return env;
}

Formula formula_for(const RunConfig& c, const SheafOfStructures& s) {
  if (c.formulas.size() != 1) throw InvalidArgument("expected exactly one formula");
  return parse_formula(c.formulas[0], s.signature()).formula;
}

// Bindings for the formula's free variables only.
Environment relevant(const Environment& env, const Formula& f) {
  Environment out;
  for (const auto& v : free_variables(f)) {
    auto it = env.find(v);
    if (it == env.end()) throw EvaluationError("unbound variable '" + v + "'");
    out.insert(*it);
  }
  return out;
}

OpenSet open_for(const RunConfig& c, const Site& site, const Environment& env) {
  const OpenSet domain = environment_domain(site, env);
  if (c.open.empty()) return domain;
  std::vector<std::string> names;
  std::stringstream ss(c.open);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) names.push_back(item);
  }
  const OpenSet u = site.open(site.node_set(names));
  if (!u.subset_of(domain)) throw InvalidArgument("--open is outside the sections' domain");
  return u;
}

int cmd_validate(const RunConfig& c, Printer& p) {
  const SheafDocument doc = load_document(c);
  auto report = validate_sheaf(doc.sheaf);
  const auto sections = validate_sections(doc.sheaf, doc.sections);
  report.violations.insert(report.violations.end(), sections.violations.begin(),
                           sections.violations.end());
  for (const auto& v : report.violations) {
    p.line({"violation", to_string(v.kind), v.detail}, "violation: " + to_string(v.kind) + ": " + v.detail);
  }
  if (report.ok()) {
    p.line({"status", "valid"}, "valid");
    return kOk;
  }
  p.line({"status", "invalid"}, "invalid (" + std::to_string(report.violations.size()) + " violations)");
  return kVerificationFailed;
}

int cmd_force(const RunConfig& c, Printer& p) {
  const SheafDocument doc = load_document(c);
  const Formula f = formula_for(c, doc.sheaf);
  const NodeId x = node_of(doc.sheaf.site(), c.node);
  const bool forced = forces_at(doc.sheaf, x, f, relevant(environment_for(c, doc), f));
  p.line({"forced", forced ? "true" : "false"}, forced ? "forced" : "not forced");
  return kOk;
}

int cmd_truth(const RunConfig& c, Printer& p, bool recursive) {
  const SheafDocument doc = load_document(c);
  const Formula f = formula_for(c, doc.sheaf);
  const Environment env = relevant(environment_for(c, doc), f);
  const OpenSet u = open_for(c, doc.sheaf.site(), env);
  const OpenSet value = recursive ? truth_value(doc.sheaf, u, f, env)
                                  : truth_value_pointwise(doc.sheaf, u, f, env);
  p.line({"open", doc.sheaf.site().format(value)}, doc.sheaf.site().format(value));
  return kOk;
}

int cmd_goedel(const RunConfig& c, Printer& p) {
  if (c.formulas.size() != 1) throw InvalidArgument("expected exactly one formula");
  const Formula f = c.sheaf_path.empty()
                        ? parse_formula_permissive(c.formulas[0]).formula
                        : parse_formula(c.formulas[0], load_document(c).sheaf.signature()).formula;
  const std::string text = to_string(goedel_translate(f));
  p.line({"formula", text}, text);
  return kOk;
}

std::vector<Formula> fragment_for(const SheafOfStructures& s, std::size_t depth) {
  const std::vector<std::string> vars{"x", "y"};
  std::vector<Formula> atoms{Formula::equal(Term::variable("x"), Term::variable("y"))};
  for (const auto& [r, arity] : s.signature().relations()) {
    std::vector<Term> args;
    for (std::size_t i = 0; i < arity; ++i) args.push_back(Term::variable(vars[i % 2]));
    atoms.push_back(Formula::relation(r, std::move(args)));
  }
  return enumerate_formulas(atoms, vars, depth);
}

int cmd_collapse(const RunConfig& c, Printer& p) {
  const SheafDocument doc = load_document(c);
  const Site& site = doc.sheaf.site();
  const OpenFilter filter = OpenFilter::point(site, node_of(site, c.node));
  const CollapsedModel m = collapse(doc.sheaf, filter);
  const auto& st = m.structure;
  p.line({"base", site.format(m.base)}, "base: " + site.format(m.base));
  p.line({"carrier", std::to_string(st.size())}, "carrier: " + std::to_string(st.size()));
  for (std::size_t i = 0; i < st.size(); ++i) {
    p.line({"element", std::to_string(i), st.element_name(i)},
           "  [" + std::to_string(i) + "] " + st.element_name(i));
  }
  for (const auto& [r, arity] : st.signature().relations()) {
    for (const auto& t : st.tuples(r)) {
      std::string args;
      for (std::size_t i = 0; i < t.size(); ++i) args += (i ? "," : "") + std::to_string(t[i]);
      p.line({"holds", r, args}, r + "(" + args + ")");
    }
  }
  if (!c.check_fundamental) return kOk;
  std::vector<Formula> formulas;
  for (const auto& text : c.formulas) {
    formulas.push_back(parse_formula(text, doc.sheaf.signature()).formula);
  }
  if (formulas.empty()) formulas = fragment_for(doc.sheaf, c.depth);
  const auto generic = check_generic(doc.sheaf, filter, formulas, c.depth);
  for (const auto& f : generic.failures) {
    p.line({"generic-failure", std::to_string(f.condition), to_string(f.formula), f.environment},
           "not generic (" + std::to_string(f.condition) + "): " + to_string(f.formula) + " [" +
               f.environment + "]");
  }
  p.line({"generic", generic.ok() ? "ok" : "failed", std::to_string(generic.checks)},
         std::string("generic: ") + (generic.ok() ? "ok" : "failed") + " (" +
             std::to_string(generic.checks) + " checks)");
  const auto fundamental = fundamental_check(doc.sheaf, filter, formulas, c.depth);
  for (const auto& d : fundamental.discrepancies) {
    p.line({"discrepancy", to_string(d.formula), d.environment},
           "discrepancy: " + to_string(d.formula) + " [" + d.environment + "]");
  }
  p.line({"fundamental", fundamental.ok() ? "ok" : "failed", std::to_string(fundamental.checks)},
         std::string("fundamental: ") + (fundamental.ok() ? "ok" : "failed") + " (" +
             std::to_string(fundamental.checks) + " checks)");
  return generic.ok() && fundamental.ok() ? kOk : kVerificationFailed;
}

int cmd_hierarchy(const RunConfig& c, Printer& p) {
  Universe u(load_site_for(c));
  const Hierarchy h = build_hierarchy(u, c.alpha);
  for (NodeId x = 0; x < u.site().size(); ++x) {
    const auto& level = h.top(x);
    const std::string& name = u.site().name(x);
    if (c.counts) {
      p.line({"count", name, std::to_string(level.size())}, name + ": " + std::to_string(level.size()));
      continue;
    }
    p.line({"node", name, std::to_string(level.size())}, name + ":");
    for (VSet f : level) {
      p.line({"vset", name, u.describe(f), std::to_string(u.rank(f))},
             "  " + u.describe(f) + " rank " + std::to_string(u.rank(f)));
    }
  }
  return kOk;
}

// The up-set K with t_K = omega member g.
NodeSet upset_of(Universe& u, VSet g) {
  NodeSet k;
  for (NodeId r : u.site().basic(u.base(g)).members()) {
    if (!u.at(g, r).empty()) k.insert(r);
  }
  return k;
}

int cmd_classifier(const RunConfig& c, Printer& p) {
  Universe u(load_site_for(c));
  const NodeId x = node_of(u.site(), c.node);
  const VSet omega = omega_classifier(u, x);
  const auto& members = u.at(omega, x);
  p.line({"members", std::to_string(members.size())}, "members: " + std::to_string(members.size()));
  for (VSet g : members) {
    const std::string k = u.site().format(upset_of(u, g));
    p.line({"upset", k, u.label(g)}, "  " + k + "  " + u.label(g));
  }
  return kOk;
}

int cmd_chi(const RunConfig& c, Printer& p) {
  Universe u(load_site_for(c));
  const NodeId x = node_of(u.site(), c.node);
  const auto chi = chi_check(u, x, c.k);
  const auto onto = no_surjection_check(u, x, c.k);
  p.line({"g-members", std::to_string(chi.g_members)}, "G_k members: " + std::to_string(chi.g_members));
  p.line({"omega-members", std::to_string(chi.omega_members)},
         "Omega members: " + std::to_string(chi.omega_members));
  p.line({"exp-members", std::to_string(chi.exp_members)},
         "Omega^k members: " + std::to_string(chi.exp_members));
  for (const auto& f : chi.failures) p.line({"chi-failure", f}, "chi failure: " + f);
  p.line({"chi-bijection", chi.ok() ? "verified" : "failed"},
         std::string("chi bijection: ") + (chi.ok() ? "verified" : "failed"));
  for (const auto& f : onto.failures) p.line({"surjection-failure", f}, "surjection found: " + f);
  p.line({"no-surjection", onto.ok() ? "verified" : "failed", std::to_string(onto.functions)},
         std::string("no surjection: ") + (onto.ok() ? "verified" : "failed") + " (" +
             std::to_string(onto.functions) + " functions)");
  return chi.ok() && onto.ok() ? kOk : kVerificationFailed;
}

int cmd_axioms(const RunConfig& c, Printer& p) {
  Universe u(load_site_for(c));
  std::vector<Axiom> axioms = all_axioms();
  if (!c.axiom.empty()) {
    auto a = parse_axiom(c.axiom);
    if (!a) throw InvalidArgument("unknown axiom '" + c.axiom + "'");
    axioms = {*a};
  }
  bool ok = true;
  for (Axiom a : axioms) {
    const auto report = axiom_check(u, c.alpha, a);
    for (const auto& f : report.failures) p.line({"failure", to_string(a), f}, to_string(a) + ": " + f);
    p.line({"axiom", to_string(a), report.ok() ? "ok" : "failed", std::to_string(report.checks)},
           to_string(a) + ": " + (report.ok() ? "ok" : "failed") + " (" +
               std::to_string(report.checks) + " checks)");
    ok = ok && report.ok();
  }
  return ok ? kOk : kVerificationFailed;
}

std::string format_condition(const Condition& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [key, value] : s) {
    if (!first) out += ",";
    first = false;
    out += "(" + key.first + "," + std::to_string(key.second) + ")->" + (value ? "1" : "0");
  }
  return out + "}";
}

int cmd_cohen(const RunConfig& c, Printer& p) {
  const std::vector<std::string> labels{"A", "B", "C", "D"};
  std::mt19937_64 rng(c.seed);
  std::uniform_int_distribution<std::size_t> pick(0, labels.size() - 1);
  Condition t;
  bool ok = true;
  for (std::size_t step = 1; step <= c.steps; ++step) {
    const std::string h = labels[pick(rng)];
    std::string m = labels[pick(rng)];
    while (m == h) m = labels[pick(rng)];
    const Condition s = separating_extension(t, h, m);
    const bool good = extends(s, t) && s.size() == t.size() + 2;
    ok = ok && good;
    p.line({"step", std::to_string(step), h, m, std::to_string(s.size()), good ? "ok" : "failed"},
           "step " + std::to_string(step) + ": separate " + h + " from " + m + " -> " +
               std::to_string(s.size()) + " entries" + (good ? "" : " FAILED"));
    t = s;
  }
  p.line({"condition", format_condition(t)}, "final: " + format_condition(t));
  p.line({"status", ok ? "verified" : "failed"}, ok ? "verified" : "failed");
  return ok ? kOk : kVerificationFailed;
}

}  // namespace

int execute(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Printer p(out, c.format);
  try {
    if (c.subcommand == "validate") return cmd_validate(c, p);
    if (c.subcommand == "force") return cmd_force(c, p);
    if (c.subcommand == "truthset") return cmd_truth(c, p, false);
    if (c.subcommand == "truthval") return cmd_truth(c, p, true);
    if (c.subcommand == "goedel") return cmd_goedel(c, p);
    if (c.subcommand == "collapse") return cmd_collapse(c, p);
    if (c.subcommand == "hierarchy") return cmd_hierarchy(c, p);
    if (c.subcommand == "classifier") return cmd_classifier(c, p);
    if (c.subcommand == "chi-check") return cmd_chi(c, p);
    if (c.subcommand == "axioms") return cmd_axioms(c, p);
    if (c.subcommand == "cohen-demo") return cmd_cohen(c, p);
    err << "error: unknown subcommand '" << c.subcommand << "'\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Sheaves of structures over finite sites: forcing, collapse, variable sets"};
  app.name("sheafwb");
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "plain";
  app.add_option("--sheaf", c.sheaf_path, "Sheaf file");
  app.add_option("--site", c.site_path, "Site file");
  app.add_option("--section", c.sections, "Bind x to the principal section of elem at node (x=node:elem)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"plain", "machine"}));
  app.add_option("--seed", c.seed, "Seed for randomized demos");

  app.add_subcommand("validate", "Check the sheaf invariants");

  auto* force = app.add_subcommand("force", "Point forcing at a node");
  force->add_option("--at", c.node, "Node")->required();
  force->add_option("formula", c.formulas, "Formula")->required();

  auto* truthset = app.add_subcommand("truthset", "Nodes forcing the formula");
  truthset->add_option("formula", c.formulas, "Formula")->required();
  truthset->add_option("--open", c.open, "Ambient open, comma-separated nodes");

  auto* truthval = app.add_subcommand("truthval", "Recursive Heyting truth value");
  truthval->add_option("formula", c.formulas, "Formula")->required();
  truthval->add_option("--open", c.open, "Ambient open, comma-separated nodes");

  auto* goedel = app.add_subcommand("goedel", "Goedel-Gentzen translation");
  goedel->add_option("formula", c.formulas, "Formula")->required();

  auto* collapse_cmd = app.add_subcommand("collapse", "Collapse along the point filter of a node");
  collapse_cmd->add_option("--point", c.node, "Node")->required();
  collapse_cmd->add_flag("--check-fundamental", c.check_fundamental,
                         "Check genericity and the fundamental theorem");
  collapse_cmd->add_option("--depth", c.depth, "Formula depth bound")->check(CLI::NonNegativeNumber);
  collapse_cmd->add_option("formulas", c.formulas, "Formulas (default: the exhaustive fragment)");

  auto* hierarchy = app.add_subcommand("hierarchy", "Enumerate V_alpha at every node");
  hierarchy->add_option("--alpha", c.alpha, "Level")->required()->check(CLI::NonNegativeNumber);
  hierarchy->add_flag("--counts", c.counts, "Print only the counts");

  auto* classifier = app.add_subcommand("classifier", "Members of Omega at a node");
  classifier->add_option("--node", c.node, "Node")->required();

  auto* chi = app.add_subcommand("chi-check", "Characteristic-function bijection and no surjection");
  chi->add_option("--k", c.k, "Size of the finite natural")->required()->check(CLI::NonNegativeNumber);
  chi->add_option("--node", c.node, "Node")->required();

  auto* axioms = app.add_subcommand("axioms", "Forced-axiom checks over V_alpha");
  axioms->add_option("--alpha", c.alpha, "Level")->check(CLI::NonNegativeNumber);
  axioms->add_option("--axiom", c.axiom, "Single axiom");

  auto* cohen = app.add_subcommand("cohen-demo", "Iterate separating extensions");
  cohen->add_option("--steps", c.steps, "Number of steps")->check(CLI::NonNegativeNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  c.format = format == "machine" ? OutputFormat::Machine : OutputFormat::Plain;
  return execute(c, out, err);
}

}  // namespace sheafwb::cli
