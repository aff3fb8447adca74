#include "sheafwb/generic.hpp"

#include <functional>

#include "sheafwb/error.hpp"
#include "sheafwb/translate.hpp"

namespace sheafwb {

namespace {

std::vector<Formula> closure_up_to(const std::vector<Formula>& formulas, std::size_t max_depth) {
  std::vector<Formula> out;
  for (auto& f : subformula_closure(formulas)) {
    if (depth(f) <= max_depth) out.push_back(std::move(f));
  }
  return out;
}

// Calls fn(u, env) for every member u of the filter and every binding of `vars` to sections on u.
void for_each_environment(const SheafOfStructures& s, const OpenFilter& filter,
                          const std::vector<std::string>& vars,
                          const std::function<void(OpenSet, const Environment&)>& fn) {
  for (OpenSet u : filter.members(s.site())) {
    const auto carrier = sections_over(s, u);
    Environment env;
    std::function<void(std::size_t)> bind = [&](std::size_t i) {
      if (i == vars.size()) {
        fn(u, env);
        return;
      }
      for (const auto& sigma : carrier) {
        env.insert_or_assign(vars[i], sigma);
        bind(i + 1);
      }
      env.erase(vars[i]);
    };
    bind(0);
  }
}

std::vector<std::string> free_list(const Formula& f) {
  auto vars = free_variables(f);
  return {vars.begin(), vars.end()};
}

}  // namespace

OpenFilter OpenFilter::point(const Site& site, NodeId x) {
  if (x >= site.size()) throw InvalidArgument("unknown node");
  return OpenFilter(site.basic(x));
}

OpenFilter OpenFilter::generated_by(const Site& site, const std::vector<OpenSet>& generators) {
  NodeSet meet = site.all_nodes();
  for (OpenSet g : generators) meet = meet & g.nodes();
  return OpenFilter(site.open(meet));
}

std::vector<OpenSet> OpenFilter::members(const Site& site) const {
  std::vector<OpenSet> out;
  for (OpenSet w : site.enumerate_opens()) {
    if (contains(w)) out.push_back(w);
  }
  return out;
}

std::string format_environment(const SheafOfStructures& s, const Environment& env) {
  std::string out;
  for (const auto& [name, sigma] : env) {
    if (!out.empty()) out += " ";
    out += name + "=" + format_section(s, sigma);
  }
  return out.empty() ? "-" : out;
}

GenericReport check_generic(const SheafOfStructures& s, const OpenFilter& filter,
                            const std::vector<Formula>& formulas, std::size_t max_depth) {
  GenericReport report;
  Forcer forcer(s);
  const auto members = filter.members(s.site());
  for (const auto& f : closure_up_to(formulas, max_depth)) {
    const Formula negated = Formula::negation(f);
    for_each_environment(s, filter, free_list(f), [&](OpenSet u, const Environment& env) {
      ++report.checks;
      bool decided = false;
      for (OpenSet w : members) {
        if (!w.subset_of(u)) continue;
        const Environment inner = restrict_environment(env, w);
        if (forcer.forces_on(w, f, inner) || forcer.forces_on(w, negated, inner)) {
          decided = true;
          break;
        }
      }
      if (!decided) {
        report.failures.push_back({f, format_environment(s, env), 1,
                                   "no member inside " + s.site().format(u) +
                                       " forces the formula or its negation"});
      }
      if (f.connective() != Connective::Exists || !forcer.forces_on(u, f, env)) return;
      bool witnessed = false;
      for (OpenSet w : members) {
        if (!w.subset_of(u) || witnessed) continue;
        Environment inner = restrict_environment(env, w);
        for (const auto& mu : sections_over(s, w)) {
          inner.insert_or_assign(f.symbol(), mu);
          if (forcer.forces_on(w, f.body(), inner)) {
            witnessed = true;
            break;
          }
        }
      }
      if (!witnessed) {
        report.failures.push_back({f, format_environment(s, env), 2,
                                   "forced existential has no witness section on a member"});
      }
    });
  }
  return report;
}

std::size_t CollapsedModel::class_of(const Section& sigma) const {
  const Section rep = restrict_section(sigma, base);
  for (std::size_t i = 0; i < representatives.size(); ++i) {
    if (representatives[i] == rep) return i;
  }
  throw InvalidArgument("section is not compatible over the filter's minimum");
}

CollapsedModel collapse(const SheafOfStructures& s, const OpenFilter& filter) {
  const OpenSet base = filter.minimum();
  return CollapsedModel{sections_structure(s, base), base, sections_over(s, base)};
}

bool tarski_eval(const CollapsedModel& m, const Formula& f, const Assignment& env) {
  return tarski_eval(m.structure, f, env);
}

FundamentalReport fundamental_check(const SheafOfStructures& s, const OpenFilter& filter,
                                    const std::vector<Formula>& formulas, std::size_t max_depth) {
  FundamentalReport report;
  Forcer forcer(s);
  const CollapsedModel model = collapse(s, filter);
  for (const auto& f : closure_up_to(formulas, max_depth)) {
    const Formula translated = goedel_translate(f);
    for_each_environment(s, filter, free_list(f), [&](OpenSet u, const Environment& env) {
      ++report.checks;
      Assignment classes;
      for (const auto& [name, sigma] : env) classes[name] = model.class_of(sigma);
      const bool satisfied = tarski_eval(model, f, classes);
      const bool in_filter = filter.contains(forcer.truth_value_pointwise(u, translated, env));
      if (satisfied != in_filter) {
        report.discrepancies.push_back({f, format_environment(s, env), satisfied, in_filter});
      }
    });
  }
  return report;
}

}  // namespace sheafwb
