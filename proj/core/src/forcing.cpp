#include "sheafwb/forcing.hpp"

#include <functional>

#include "sheafwb/error.hpp"
#include "sheafwb/structure.hpp"

namespace sheafwb {

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint64_t>& key) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto v : key) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

using Memo = std::unordered_map<std::vector<std::uint64_t>, std::uint64_t, KeyHash>;

template <typename Lookup>
Element eval_term(const SheafOfStructures& s, NodeId x, const Term& t, const Lookup& lookup) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      return lookup(t.name());
    case Term::Kind::Constant: {
      const Element c = s.constant(t.name(), x);
      if (c == kNone) {
        throw EvaluationError("constant '" + t.name() + "' undefined at " + s.site().name(x));
      }
      return c;
    }
    case Term::Kind::Apply: {
      Tuple args;
      for (const auto& a : t.args()) args.push_back(eval_term(s, x, a, lookup));
      const Element v = s.apply(t.name(), x, args);
      if (v == kNone) {
        throw EvaluationError("function '" + t.name() + "' undefined at " + s.site().name(x));
      }
      return v;
    }
  }
  throw EvaluationError("malformed term");
}

template <typename Lookup>
bool eval_atom(const SheafOfStructures& s, NodeId x, const Formula& f, const Lookup& lookup) {
  if (f.connective() == Connective::Equal) {
    return eval_term(s, x, f.terms()[0], lookup) == eval_term(s, x, f.terms()[1], lookup);
  }
  Tuple tuple;
  for (const auto& t : f.terms()) tuple.push_back(eval_term(s, x, t, lookup));
  return s.holds(f.symbol(), x, tuple);
}

}  // namespace

OpenSet environment_domain(const Site& site, const Environment& env) {
  NodeSet d = site.all_nodes();
  for (const auto& [name, sigma] : env) d = d & sigma.domain.nodes();
  return site.open(d);
}

Environment restrict_environment(const Environment& env, OpenSet v) {
  Environment out;
  for (const auto& [name, sigma] : env) out.emplace(name, restrict_section(sigma, v));
  return out;
}

struct Forcer::Impl {
  explicit Impl(const SheafOfStructures& sheaf) : s(sheaf), site(sheaf.site()) {}

  const SheafOfStructures& s;
  const Site& site;
  std::vector<Formula> retained;
  std::unordered_map<const void*, std::vector<std::string>> free_cache;
  std::map<std::string, std::size_t> slots;
  Memo point_memo;
  Memo heyting_memo;
  Memo exhaustive_memo;
  std::map<std::uint64_t, std::vector<Section>> sections_cache;

  void retain(const Formula& f) {
    if (retained.empty() || !(retained.back().identity() == f.identity())) retained.push_back(f);
  }

  const std::vector<std::string>& free_of(const Formula& f) {
    auto it = free_cache.find(f.identity());
    if (it != free_cache.end()) return it->second;
    auto vars = free_variables(f);
    return free_cache.emplace(f.identity(), std::vector<std::string>(vars.begin(), vars.end()))
        .first->second;
  }

  std::size_t slot(const std::string& v) {
    auto it = slots.find(v);
    if (it != slots.end()) return it->second;
    const std::size_t i = slots.size();
    slots.emplace(v, i);
    return i;
  }

  const std::vector<Section>& sections(OpenSet w) {
    auto it = sections_cache.find(w.bits());
    if (it != sections_cache.end()) return it->second;
    return sections_cache.emplace(w.bits(), sections_over(s, w)).first->second;
  }

  // ---- point forcing: assignments are fiber elements at the current node, by slot ----

  std::vector<Element> transport(NodeId x, NodeId y, const std::vector<Element>& rho) const {
    if (x == y) return rho;
    std::vector<Element> out(rho.size(), kNone);
    for (std::size_t i = 0; i < rho.size(); ++i) {
      if (rho[i] == kNone) continue;
      out[i] = s.transition(x, y, rho[i]);
      if (out[i] == kNone) {
        throw EvaluationError("transition " + site.name(x) + " -> " + site.name(y) +
                              " undefined");
      }
    }
    return out;
  }

  bool force(NodeId x, const Formula& f, std::vector<Element>& rho) {
    const auto& free = free_of(f);
    std::vector<std::uint64_t> key{reinterpret_cast<std::uintptr_t>(f.identity()), x};
    for (const auto& v : free) {
      const std::size_t i = slot(v);
      if (i >= rho.size()) rho.resize(slots.size(), kNone);
      if (rho[i] == kNone) throw EvaluationError("unbound variable '" + v + "'");
      key.push_back(rho[i]);
    }
    if (auto it = point_memo.find(key); it != point_memo.end()) return it->second != 0;
    const bool result = force_uncached(x, f, rho);
    point_memo.emplace(std::move(key), result ? 1 : 0);
    return result;
  }

  bool force_uncached(NodeId x, const Formula& f, std::vector<Element>& rho) {
    switch (f.connective()) {
      case Connective::Equal:
      case Connective::Relation:
        return eval_atom(s, x, f, [&](const std::string& v) { return rho[slot(v)]; });
      case Connective::And:
        return force(x, f.lhs(), rho) && force(x, f.rhs(), rho);
      case Connective::Or:
        return force(x, f.lhs(), rho) || force(x, f.rhs(), rho);
      case Connective::Not:
        for (NodeId y : site.basic(x).members()) {
          auto moved = transport(x, y, rho);
          if (force(y, f.body(), moved)) return false;
        }
        return true;
      case Connective::Implies:
        for (NodeId y : site.basic(x).members()) {
          auto moved = transport(x, y, rho);
          if (force(y, f.lhs(), moved) && !force(y, f.rhs(), moved)) return false;
        }
        return true;
      case Connective::Exists: {
        const std::size_t i = slot(f.symbol());
        if (i >= rho.size()) rho.resize(slots.size(), kNone);
        const Element saved = rho[i];
        bool found = false;
        for (Element a = 0; a < s.fiber_size(x) && !found; ++a) {
          rho[i] = a;
          found = force(x, f.body(), rho);
        }
        rho[i] = saved;
        return found;
      }
      case Connective::Forall: {
        const std::size_t i = slot(f.symbol());
        for (NodeId y : site.basic(x).members()) {
          auto moved = transport(x, y, rho);
          moved.resize(std::max(moved.size(), slots.size()), kNone);
          for (Element a = 0; a < s.fiber_size(y); ++a) {
            moved[i] = a;
            if (!force(y, f.body(), moved)) return false;
          }
        }
        return true;
      }
    }
    throw EvaluationError("malformed formula");
  }

  std::vector<Element> assignment_at(NodeId x, const Formula& f, const Environment& env) {
    std::vector<Element> rho;
    for (const auto& v : free_of(f)) {
      auto it = env.find(v);
      if (it == env.end()) throw EvaluationError("unbound variable '" + v + "'");
      if (!it->second.domain.contains(x)) {
        throw InvalidArgument("node " + site.name(x) + " is outside the domain of " + v);
      }
      const std::size_t i = slot(v);
      if (rho.size() < slots.size()) rho.resize(slots.size(), kNone);
      rho[i] = it->second.values[x];
    }
    rho.resize(slots.size(), kNone);
    return rho;
  }

  // ---- open-set valuations: assignments are sections restricted to the current open ----

  void check_domain(OpenSet u, const Formula& f, const Environment& env) {
    for (const auto& v : free_of(f)) {
      auto it = env.find(v);
      if (it == env.end()) throw EvaluationError("unbound variable '" + v + "'");
      if (!u.subset_of(it->second.domain)) {
        throw InvalidArgument("open " + site.format(u) + " is outside the domain of " + v);
      }
    }
  }

  std::vector<std::uint64_t> open_key(const Formula& f, OpenSet u, const Environment& env) {
    std::vector<std::uint64_t> key{reinterpret_cast<std::uintptr_t>(f.identity()), u.bits()};
    for (const auto& v : free_of(f)) {
      const auto& sigma = env.at(v);
      for (NodeId x : u.members()) key.push_back(sigma.values[x]);
    }
    return key;
  }

  OpenSet atom_value(OpenSet u, const Formula& f, const Environment& env) {
    NodeSet holds;
    for (NodeId x : u.members()) {
      if (eval_atom(s, x, f, [&](const std::string& v) { return env.at(v).values[x]; })) {
        holds.insert(x);
      }
    }
    return site.interior(holds);
  }

  template <typename Quantifier>
  OpenSet heyting(OpenSet u, const Formula& f, const Environment& env, Memo& memo,
                  const Quantifier& quantifier) {
    auto key = open_key(f, u, env);
    if (auto it = memo.find(key); it != memo.end()) return site.open(NodeSet(it->second));
    OpenSet result;
    switch (f.connective()) {
      case Connective::Equal:
      case Connective::Relation:
        result = atom_value(u, f, env);
        break;
      case Connective::And:
        result = site.meet(u, heyting(u, f.lhs(), env, memo, quantifier),
                           heyting(u, f.rhs(), env, memo, quantifier));
        break;
      case Connective::Or:
        result = site.join(u, heyting(u, f.lhs(), env, memo, quantifier),
                           heyting(u, f.rhs(), env, memo, quantifier));
        break;
      case Connective::Not:
        result = site.negation(u, heyting(u, f.body(), env, memo, quantifier));
        break;
      case Connective::Implies:
        result = site.implication(u, heyting(u, f.lhs(), env, memo, quantifier),
                                  heyting(u, f.rhs(), env, memo, quantifier));
        break;
      case Connective::Exists:
      case Connective::Forall:
        result = quantifier(*this, u, f, env);
        break;
    }
    memo.emplace(std::move(key), result.bits());
    return result;
  }

  // Union (exists) or interior of intersection (forall) over the given witnesses.
  template <typename Witnesses, typename Recurse>
  OpenSet quantify(OpenSet u, const Formula& f, const Environment& env, const Witnesses& witnesses,
                   const Recurse& recurse) {
    const bool universal = f.connective() == Connective::Forall;
    NodeSet acc = universal ? u.nodes() : NodeSet();
    witnesses([&](OpenSet w, const Section& sigma) {
      Environment inner = restrict_environment(env, w);
      inner.insert_or_assign(f.symbol(), sigma);
      const OpenSet value = recurse(w, f.body(), inner);
      if (universal) {
        acc = acc & ((u.nodes() - w.nodes()) | value.nodes());
      } else {
        acc = acc | value.nodes();
      }
    });
    return universal ? site.interior(acc) : site.open(acc);
  }

  OpenSet recursive(OpenSet u, const Formula& f, const Environment& env) {
    return heyting(u, f, env, heyting_memo, [](Impl& self, OpenSet v, const Formula& g,
                                               const Environment& e) {
      return self.quantify(
          v, g, e,
          [&](const auto& visit) {
            for (NodeId y : v.members()) {
              for (Element a = 0; a < self.s.fiber_size(y); ++a) {
                const Section p = principal_section(self.s, y, a);
                visit(p.domain, p);
              }
            }
          },
          [&](OpenSet w, const Formula& body, const Environment& inner) {
            return self.recursive(w, body, inner);
          });
    });
  }

  OpenSet exhaustive(OpenSet u, const Formula& f, const Environment& env) {
    return heyting(u, f, env, exhaustive_memo, [](Impl& self, OpenSet v, const Formula& g,
                                                  const Environment& e) {
      return self.quantify(
          v, g, e,
          [&](const auto& visit) {
            for (OpenSet w : self.site.opens_within(v)) {
              for (const Section& sigma : self.sections(w)) visit(w, sigma);
            }
          },
          [&](OpenSet w, const Formula& body, const Environment& inner) {
            return self.exhaustive(w, body, inner);
          });
    });
  }
};

Forcer::Forcer(const SheafOfStructures& s) : s_(s), impl_(std::make_unique<Impl>(s)) {}
Forcer::~Forcer() = default;

bool Forcer::forces_at(NodeId x, const Formula& f, const Environment& env) {
  if (x >= s_.site().size()) throw InvalidArgument("unknown node");
  impl_->retain(f);
  auto rho = impl_->assignment_at(x, f, env);
  return impl_->force(x, f, rho);
}

bool Forcer::forces_on(OpenSet u, const Formula& f, const Environment& env) {
  return truth_value_pointwise(u, f, env) == u;
}

OpenSet Forcer::truth_value(OpenSet u, const Formula& f, const Environment& env) {
  impl_->retain(f);
  impl_->check_domain(u, f, env);
  return impl_->recursive(u, f, env);
}

OpenSet Forcer::truth_value_pointwise(OpenSet u, const Formula& f, const Environment& env) {
  impl_->retain(f);
  impl_->check_domain(u, f, env);
  NodeSet out;
  for (NodeId x : u.members()) {
    if (forces_at(x, f, env)) out.insert(x);
  }
  return s_.site().open(out);
}

OpenSet Forcer::truth_value_exhaustive(OpenSet u, const Formula& f, const Environment& env) {
  impl_->retain(f);
  impl_->check_domain(u, f, env);
  return impl_->exhaustive(u, f, env);
}

bool forces_at(const SheafOfStructures& s, NodeId x, const Formula& f, const Environment& env) {
  return Forcer(s).forces_at(x, f, env);
}

bool forces_on(const SheafOfStructures& s, OpenSet u, const Formula& f, const Environment& env) {
  return Forcer(s).forces_on(u, f, env);
}

OpenSet truth_value(const SheafOfStructures& s, OpenSet u, const Formula& f,
                    const Environment& env) {
  return Forcer(s).truth_value(u, f, env);
}

OpenSet truth_value_pointwise(const SheafOfStructures& s, OpenSet u, const Formula& f,
                              const Environment& env) {
  return Forcer(s).truth_value_pointwise(u, f, env);
}

OpenSet truth_value_exhaustive(const SheafOfStructures& s, OpenSet u, const Formula& f,
                               const Environment& env) {
  return Forcer(s).truth_value_exhaustive(u, f, env);
}

Section glue_witnesses(const SheafOfStructures& s, OpenSet u, const Formula& exists_formula,
                       const Environment& env) {
  if (exists_formula.connective() != Connective::Exists) {
    throw InvalidArgument("glue_witnesses needs an existential formula");
  }
  const Site& site = s.site();
  Forcer forcer(s);
  if (!forcer.forces_on(u, exists_formula, env)) {
    throw InvalidArgument("the existential is not forced on " + site.format(u));
  }
  const std::string& v = exists_formula.symbol();
  const Formula& body = exists_formula.body();
  Section mu = empty_section(site);
  for (NodeId x = 0; x < site.size(); ++x) {
    if (!u.contains(x) || mu.domain.contains(x)) continue;
    const OpenSet up = site.basic(x);
    for (Element a = 0; a < s.fiber_size(x); ++a) {
      const Section w = principal_section(s, x, a);
      bool compatible = true;
      for (NodeId y : (up.nodes() & mu.domain.nodes()).members()) {
        if (w.values[y] != mu.values[y]) compatible = false;
      }
      if (!compatible) continue;
      Environment inner = restrict_environment(env, up);
      inner.insert_or_assign(v, w);
      if (!forcer.forces_at(x, body, inner)) continue;
      for (NodeId y : up.members()) mu.values[y] = w.values[y];
      mu.domain = site.open(mu.domain.nodes() | up.nodes());
      break;
    }
  }
  return mu;
}

bool is_classical_node(const SheafOfStructures& s, NodeId x) { return s.site().is_isolated(x); }

ClassicalComparison classical_check(const SheafOfStructures& s, NodeId x, const Formula& f,
                                    const Environment& env) {
  if (x >= s.site().size()) throw InvalidArgument("unknown node");
  if (!is_classical_node(s, x)) {
    throw InvalidArgument("node " + s.site().name(x) + " is not maximal");
  }
  Assignment assignment;
  for (const auto& [name, sigma] : env) {
    if (!sigma.domain.contains(x)) {
      throw InvalidArgument("node " + s.site().name(x) + " is outside the domain of " + name);
    }
    assignment[name] = sigma.values[x];
  }
  return {forces_at(s, x, f, env), tarski_eval(fiber_structure(s, x), f, assignment)};
}

}  // namespace sheafwb
