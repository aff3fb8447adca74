#include "sheafwb/sheaf.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "sheafwb/error.hpp"

namespace sheafwb {

namespace {

std::string tuple_text(const SheafOfStructures& s, NodeId x, const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += t[i] < s.fiber_size(x) ? s.element_name(x, t[i]) : "?";
  }
  return out + ")";
}

// Calls `fn` on every tuple of length `arity` over {0..n-1}, in lexicographic order.
void for_each_tuple(std::size_t n, std::size_t arity, const std::function<void(const Tuple&)>& fn) {
  if (arity > 0 && n == 0) return;
  Tuple t(arity, 0);
  while (true) {
    fn(t);
    std::size_t i = arity;
    while (i > 0) {
      if (++t[i - 1] < n) break;
      t[i - 1] = 0;
      --i;
    }
    if (i == 0) return;
  }
}

}  // namespace

std::optional<Element> SheafOfStructures::find_element(NodeId x, std::string_view name) const {
  const auto& f = fibers_.at(x);
  auto it = std::find(f.begin(), f.end(), name);
  if (it == f.end()) return std::nullopt;
  return static_cast<Element>(it - f.begin());
}

Element SheafOfStructures::transition(NodeId x, NodeId y, Element a) const {
  if (!site_.leq(x, y)) {
    throw InvalidArgument("no transition " + site_.name(x) + " -> " + site_.name(y));
  }
  const auto& map = transitions_[x * site_.size() + y];
  return a < map.size() ? map[a] : kNone;
}

bool SheafOfStructures::holds(const std::string& relation, NodeId x, const Tuple& tuple) const {
  auto it = relations_.find(relation);
  return it != relations_.end() && it->second.at(x).count(tuple) != 0;
}

const std::set<Tuple>& SheafOfStructures::tuples(const std::string& relation, NodeId x) const {
  static const std::set<Tuple> kEmpty;
  auto it = relations_.find(relation);
  return it == relations_.end() ? kEmpty : it->second.at(x);
}

Element SheafOfStructures::apply(const std::string& function, NodeId x, const Tuple& args) const {
  auto it = functions_.find(function);
  if (it == functions_.end()) return kNone;
  const auto& table = it->second.at(x);
  auto jt = table.find(args);
  return jt == table.end() ? kNone : jt->second;
}

const std::map<Tuple, Element>& SheafOfStructures::function_table(const std::string& function,
                                                                 NodeId x) const {
  static const std::map<Tuple, Element> kEmpty;
  auto it = functions_.find(function);
  return it == functions_.end() ? kEmpty : it->second.at(x);
}

Element SheafOfStructures::constant(const std::string& constant, NodeId x) const {
  auto it = constants_.find(constant);
  return it == constants_.end() ? kNone : it->second.at(x);
}

SheafBuilder::SheafBuilder(Site site) : sheaf_(std::move(site)) {
  const std::size_t n = sheaf_.site_.size();
  sheaf_.fibers_.resize(n);
  sheaf_.transitions_.resize(n * n);
}

Element SheafBuilder::add_element(NodeId x, std::string name) {
  auto& f = sheaf_.fibers_.at(x);
  if (std::find(f.begin(), f.end(), name) != f.end()) {
    throw InvalidArgument("duplicate element '" + name + "' at " + site().name(x));
  }
  f.push_back(std::move(name));
  return f.size() - 1;
}

Element SheafBuilder::element(NodeId x, std::string_view name) const {
  auto e = sheaf_.find_element(x, name);
  if (!e) {
    throw InvalidArgument("unknown element '" + std::string(name) + "' at " + site().name(x));
  }
  return *e;
}

Element SheafBuilder::element_or_none(NodeId x, std::string_view name) const {
  return sheaf_.find_element(x, name).value_or(kNone);
}

void SheafBuilder::check_element(NodeId x, Element a) const {
  if (x >= site().size()) throw InvalidArgument("unknown node");
  if (a >= sheaf_.fibers_[x].size()) {
    throw InvalidArgument("element index out of range at " + site().name(x));
  }
}

void SheafBuilder::set_transition(NodeId x, NodeId y, Element a, Element b) {
  if (!site().leq(x, y)) {
    throw InvalidArgument("no order relation " + site().name(x) + " <= " + site().name(y));
  }
  check_element(x, a);
  check_element(y, b);
  auto& map = sheaf_.transitions_[x * site().size() + y];
  map.resize(sheaf_.fibers_[x].size(), kNone);
  map[a] = b;
}

void SheafBuilder::declare_relation(const std::string& name, std::size_t arity) {
  if (auto known = sheaf_.sig_.relation_arity(name)) {
    if (*known != arity) throw InvalidArgument("relation '" + name + "' redeclared with new arity");
    return;
  }
  sheaf_.sig_.add_relation(name, arity);
  sheaf_.relations_[name].resize(site().size());
}

void SheafBuilder::add_tuple(const std::string& relation, NodeId x, Tuple tuple) {
  auto arity = sheaf_.sig_.relation_arity(relation);
  if (!arity) throw InvalidArgument("undeclared relation '" + relation + "'");
  if (*arity != tuple.size()) throw InvalidArgument("arity mismatch for relation '" + relation + "'");
  for (Element a : tuple) check_element(x, a);
  sheaf_.relations_[relation][x].insert(std::move(tuple));
}

void SheafBuilder::declare_function(const std::string& name, std::size_t arity) {
  if (auto known = sheaf_.sig_.function_arity(name)) {
    if (*known != arity) throw InvalidArgument("function '" + name + "' redeclared with new arity");
    return;
  }
  sheaf_.sig_.add_function(name, arity);
  sheaf_.functions_[name].resize(site().size());
}

void SheafBuilder::set_function(const std::string& function, NodeId x, Tuple args,
                                Element value) {
  auto arity = sheaf_.sig_.function_arity(function);
  if (!arity) throw InvalidArgument("undeclared function '" + function + "'");
  if (*arity != args.size()) throw InvalidArgument("arity mismatch for function '" + function + "'");
  for (Element a : args) check_element(x, a);
  check_element(x, value);
  sheaf_.functions_[function][x][std::move(args)] = value;
}

void SheafBuilder::declare_constant(const std::string& name) {
  if (sheaf_.sig_.is_constant(name)) return;
  sheaf_.sig_.add_constant(name);
  sheaf_.constants_[name].assign(site().size(), kNone);
}

void SheafBuilder::set_constant(const std::string& constant, NodeId x, Element value) {
  if (!sheaf_.sig_.is_constant(constant)) {
    throw InvalidArgument("undeclared constant '" + constant + "'");
  }
  check_element(x, value);
  sheaf_.constants_[constant][x] = value;
}

SheafOfStructures SheafBuilder::build(bool infer_transitions) const {
  SheafOfStructures s = sheaf_;
  const Site& site = s.site_;
  const std::size_t n = site.size();
  auto map_of = [&](NodeId x, NodeId y) -> std::vector<Element>& {
    return s.transitions_[x * n + y];
  };
  for (NodeId x = 0; x < n; ++x) {
    for (NodeId y = 0; y < n; ++y) {
      if (!site.leq(x, y)) continue;
      auto& map = map_of(x, y);
      map.resize(s.fibers_[x].size(), kNone);
      if (x == y) {
        for (Element a = 0; a < map.size(); ++a) {
          if (map[a] == kNone) map[a] = a;
        }
      }
    }
  }
  if (!infer_transitions) return s;
  for (NodeId x = 0; x < n; ++x) {
    for (NodeId y = 0; y < n; ++y) {
      if (x == y || !site.leq(x, y)) continue;
      auto& map = map_of(x, y);
      for (Element a = 0; a < map.size(); ++a) {
        if (map[a] != kNone) continue;
        if (auto same = s.find_element(y, s.fibers_[x][a])) map[a] = *same;
      }
    }
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (NodeId x = 0; x < n; ++x) {
      for (NodeId y = 0; y < n; ++y) {
        if (x == y || !site.leq(x, y)) continue;
        for (Element a = 0; a < s.fibers_[x].size(); ++a) {
          if (map_of(x, y)[a] != kNone) continue;
          for (NodeId z = 0; z < n; ++z) {
            if (z == x || z == y || !site.leq(x, z) || !site.leq(z, y)) continue;
            const Element b = map_of(x, z)[a];
            if (b == kNone) continue;
            const Element c = map_of(z, y)[b];
            if (c == kNone) continue;
            map_of(x, y)[a] = c;
            changed = true;
            break;
          }
        }
      }
    }
  }
  return s;
}

Section empty_section(const Site& site) {
  return Section{site.empty_open(), std::vector<Element>(site.size(), kNone)};
}

Section principal_section(const SheafOfStructures& s, NodeId x, Element a) {
  const Site& site = s.site();
  if (x >= site.size()) throw InvalidArgument("unknown node");
  if (a >= s.fiber_size(x)) {
    throw InvalidArgument("element " + std::to_string(a) + " is not in the fiber at " +
                          site.name(x));
  }
  Section out{site.basic(x), std::vector<Element>(site.size(), kNone)};
  for (NodeId y : out.domain.members()) {
    out.values[y] = s.transition(x, y, a);
    if (out.values[y] == kNone) {
      throw InvalidArgument("transition " + site.name(x) + " -> " + site.name(y) +
                            " undefined on " + s.element_name(x, a));
    }
  }
  return out;
}

Section restrict_section(const Section& sigma, OpenSet v) {
  if (!v.subset_of(sigma.domain)) {
    throw InvalidArgument("restriction target is not contained in the section's domain");
  }
  Section out{v, std::vector<Element>(sigma.values.size(), kNone)};
  for (NodeId y : v.members()) out.values[y] = sigma.values[y];
  return out;
}

bool is_compatible(const SheafOfStructures& s, const Section& sigma) {
  const auto nodes = sigma.domain.members();
  for (NodeId x : nodes) {
    if (sigma.values[x] >= s.fiber_size(x)) return false;
    for (NodeId y : nodes) {
      if (s.site().leq(x, y) && s.transition(x, y, sigma.values[x]) != sigma.values[y]) {
        return false;
      }
    }
  }
  return true;
}

std::vector<Section> sections_over(const SheafOfStructures& s, OpenSet u, std::size_t limit) {
  const Site& site = s.site();
  std::vector<NodeId> order;
  for (NodeId x : site.top_down_order()) {
    if (u.contains(x)) order.push_back(x);
  }
  std::vector<Section> out;
  Section current{u, std::vector<Element>(site.size(), kNone)};
  std::function<void(std::size_t)> extend = [&](std::size_t i) {
    if (i == order.size()) {
      if (out.size() >= limit) {
        throw GuardExceeded("more than " + std::to_string(limit) + " sections over " +
                            site.format(u));
      }
      out.push_back(current);
      return;
    }
    const NodeId x = order[i];
    for (Element a = 0; a < s.fiber_size(x); ++a) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        const NodeId y = order[j];
        if (site.leq(x, y) && s.transition(x, y, a) != current.values[y]) ok = false;
        if (ok && site.leq(y, x) && s.transition(y, x, current.values[y]) != a) ok = false;
      }
      if (!ok) continue;
      current.values[x] = a;
      extend(i + 1);
      current.values[x] = kNone;
    }
  };
  extend(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::string format_section(const SheafOfStructures& s, const Section& sigma) {
  std::string out = "{";
  bool first = true;
  for (NodeId x : sigma.domain.members()) {
    if (!first) out += ",";
    first = false;
    out += s.site().name(x) + "->" +
           (sigma.values[x] < s.fiber_size(x) ? s.element_name(x, sigma.values[x]) : "?");
  }
  return out + "}";
}

FiniteStructure sections_structure(const SheafOfStructures& s, OpenSet u, std::size_t limit) {
  const auto carrier = sections_over(s, u, limit);
  std::vector<std::string> names;
  std::map<std::vector<Element>, std::size_t> index;
  for (std::size_t i = 0; i < carrier.size(); ++i) {
    names.push_back(format_section(s, carrier[i]));
    index[carrier[i].values] = i;
  }
  FiniteStructure m(s.signature(), names);
  const auto nodes = u.members();
  auto pointwise = [&](const FiniteStructure::Tuple& args, NodeId x) {
    Tuple t;
    for (std::size_t i : args) t.push_back(carrier[i].values[x]);
    return t;
  };
  for (const auto& [r, arity] : s.signature().relations()) {
    for_each_tuple(carrier.size(), arity, [&](const Tuple& args) {
      for (NodeId x : nodes) {
        if (!s.holds(r, x, pointwise(args, x))) return;
      }
      m.add_tuple(r, args);
    });
  }
  for (const auto& [f, arity] : s.signature().functions()) {
    for_each_tuple(carrier.size(), arity, [&](const Tuple& args) {
      std::vector<Element> values(s.site().size(), kNone);
      for (NodeId x : nodes) {
        values[x] = s.apply(f, x, pointwise(args, x));
        if (values[x] == kNone) return;
      }
      if (auto it = index.find(values); it != index.end()) m.set_function(f, args, it->second);
    });
  }
  for (const auto& c : s.signature().constants()) {
    std::vector<Element> values(s.site().size(), kNone);
    bool defined = true;
    for (NodeId x : nodes) {
      values[x] = s.constant(c, x);
      if (values[x] == kNone) defined = false;
    }
    if (!defined) continue;
    if (auto it = index.find(values); it != index.end()) m.set_constant(c, it->second);
  }
  return m;
}

FiniteStructure fiber_structure(const SheafOfStructures& s, NodeId x) {
  FiniteStructure m(s.signature(), s.fiber(x));
  for (const auto& [r, arity] : s.signature().relations()) {
    for (const auto& t : s.tuples(r, x)) m.add_tuple(r, t);
  }
  for (const auto& [f, arity] : s.signature().functions()) {
    for (const auto& [args, v] : s.function_table(f, x)) m.set_function(f, args, v);
  }
  for (const auto& c : s.signature().constants()) {
    if (const Element v = s.constant(c, x); v != kNone) m.set_constant(c, v);
  }
  return m;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::WellFormedness: return "well-formedness";
    case ViolationKind::Functoriality: return "functoriality";
    case ViolationKind::RelationOpenness: return "relation-openness";
    case ViolationKind::FunctionContinuity: return "function-continuity";
    case ViolationKind::ConstantContinuity: return "constant-continuity";
    case ViolationKind::SectionCompatibility: return "section-compatibility";
  }
  return "unknown";
}

std::size_t ValidationReport::count(ViolationKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; }));
}

ValidationReport validate_sheaf(const SheafOfStructures& s) {
  ValidationReport report;
  const Site& site = s.site();
  const std::size_t n = site.size();
  auto add = [&](ViolationKind kind, std::string detail) {
    report.violations.push_back({kind, std::move(detail)});
  };
  auto pair_text = [&](NodeId x, NodeId y) { return site.name(x) + "<=" + site.name(y); };

  for (NodeId x = 0; x < n; ++x) {
    for (const auto& [f, arity] : s.signature().functions()) {
      for_each_tuple(s.fiber_size(x), arity, [&](const Tuple& args) {
        if (s.apply(f, x, args) == kNone) {
          add(ViolationKind::WellFormedness,
              "function " + f + " undefined at " + site.name(x) + " on " + tuple_text(s, x, args));
        }
      });
    }
    for (const auto& c : s.signature().constants()) {
      if (s.constant(c, x) == kNone) {
        add(ViolationKind::WellFormedness, "constant " + c + " undefined at " + site.name(x));
      }
    }
  }

  for (NodeId x = 0; x < n; ++x) {
    for (NodeId y = 0; y < n; ++y) {
      if (!site.leq(x, y)) continue;
      for (Element a = 0; a < s.fiber_size(x); ++a) {
        const Element b = s.transition(x, y, a);
        if (b == kNone) {
          add(ViolationKind::Functoriality,
              "transition " + pair_text(x, y) + " undefined on " + s.element_name(x, a));
        } else if (x == y && b != a) {
          add(ViolationKind::Functoriality,
              "transition " + pair_text(x, x) + " is not the identity on " + s.element_name(x, a));
        }
      }
      for (NodeId z = 0; z < n; ++z) {
        if (!site.leq(y, z)) continue;
        for (Element a = 0; a < s.fiber_size(x); ++a) {
          const Element b = s.transition(x, y, a);
          if (b == kNone) continue;
          const Element via = s.transition(y, z, b);
          const Element direct = s.transition(x, z, a);
          if (via != kNone && direct != kNone && via != direct) {
            add(ViolationKind::Functoriality,
                "composite " + site.name(x) + "<=" + site.name(y) + "<=" + site.name(z) +
                    " disagrees with direct map on " + s.element_name(x, a));
          }
        }
      }
    }
  }

  auto image = [&](NodeId x, NodeId y, const Tuple& t) -> std::optional<Tuple> {
    Tuple out;
    for (Element a : t) {
      const Element b = s.transition(x, y, a);
      if (b == kNone) return std::nullopt;
      out.push_back(b);
    }
    return out;
  };

  for (NodeId x = 0; x < n; ++x) {
    for (NodeId y = 0; y < n; ++y) {
      if (x == y || !site.leq(x, y)) continue;
      for (const auto& [r, arity] : s.signature().relations()) {
        for (const auto& t : s.tuples(r, x)) {
          auto moved = image(x, y, t);
          if (moved && !s.holds(r, y, *moved)) {
            add(ViolationKind::RelationOpenness,
                r + tuple_text(s, x, t) + " holds at " + site.name(x) + " but its image fails at " +
                    site.name(y) + " (" + pair_text(x, y) + ")");
          }
        }
      }
      for (const auto& [f, arity] : s.signature().functions()) {
        for (const auto& [args, v] : s.function_table(f, x)) {
          auto moved = image(x, y, args);
          const Element tv = s.transition(x, y, v);
          if (!moved || tv == kNone) continue;
          if (s.apply(f, y, *moved) != tv) {
            add(ViolationKind::FunctionContinuity,
                f + tuple_text(s, x, args) + " does not commute with " + pair_text(x, y));
          }
        }
      }
      for (const auto& c : s.signature().constants()) {
        const Element cx = s.constant(c, x);
        if (cx == kNone) continue;
        const Element moved = s.transition(x, y, cx);
        if (moved != kNone && moved != s.constant(c, y)) {
          add(ViolationKind::ConstantContinuity,
              "constant " + c + " does not commute with " + pair_text(x, y));
        }
      }
    }
  }
  return report;
}

ValidationReport validate_sections(const SheafOfStructures& s,
                                   const std::map<std::string, Section>& sections) {
  ValidationReport report;
  for (const auto& [name, sigma] : sections) {
    if (!is_compatible(s, sigma)) {
      report.violations.push_back(
          {ViolationKind::SectionCompatibility, "section " + name + " is not compatible"});
    }
  }
  return report;
}

}  // namespace sheafwb
