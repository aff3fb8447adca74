#include "oracles.hpp"

#include <stdexcept>

namespace sheafwb::oracle {

Nodes up_of(const Site& site, const Nodes& seed) {
  Nodes out;
  for (NodeId y = 0; y < site.size(); ++y) {
    for (NodeId x : seed) {
      if (site.leq(x, y)) out.insert(y);
    }
  }
  return out;
}

bool is_up_set(const Site& site, const Nodes& s) { return up_of(site, s) == s; }

Nodes interior_of(const Site& site, const Nodes& subset) {
  Nodes out;
  for (NodeId x : subset) {
    const Nodes up = up_of(site, {x});
    bool inside = true;
    for (NodeId y : up) inside = inside && subset.count(y);
    if (inside) out.insert(x);
  }
  return out;
}

Nodes to_nodes(OpenSet u) {
  const auto m = u.members();
  return Nodes(m.begin(), m.end());
}

std::vector<Nodes> up_sets_within(const Site& site, const Nodes& ambient) {
  std::vector<NodeId> pool(ambient.begin(), ambient.end());
  std::vector<Nodes> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << pool.size()); ++mask) {
    Nodes s;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (mask >> i & 1U) s.insert(pool[i]);
    }
    if (is_up_set(site, s)) out.push_back(s);
  }
  return out;
}

std::vector<Nodes> all_up_sets(const Site& site) {
  Nodes all;
  for (NodeId x = 0; x < site.size(); ++x) all.insert(x);
  return up_sets_within(site, all);
}

std::size_t count_up_sets_above(const Site& site, NodeId p) {
  return up_sets_within(site, up_of(site, {p})).size();
}

namespace {

Element term_value(const SheafOfStructures& s, NodeId x, const Term& t, const Germs& rho) {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      const auto& [base, a] = rho.at(t.name());
      return s.transition(base, x, a);
    }
    case Term::Kind::Constant:
      return s.constant(t.name(), x);
    case Term::Kind::Apply: {
      Tuple args;
      for (const auto& arg : t.args()) args.push_back(term_value(s, x, arg, rho));
      return s.apply(t.name(), x, args);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

bool kripke(const SheafOfStructures& s, NodeId x, const Formula& f, const Germs& rho) {
  const Site& site = s.site();
  auto above = [&](auto&& pred) {
    for (NodeId y = 0; y < site.size(); ++y) {
      if (site.leq(x, y) && !pred(y)) return false;
    }
    return true;
  };
  switch (f.connective()) {
    case Connective::Equal: {
      const Element a = term_value(s, x, f.terms()[0], rho);
      const Element b = term_value(s, x, f.terms()[1], rho);
      if (a == kNone || b == kNone) throw std::runtime_error("undefined term");
      return a == b;
    }
    case Connective::Relation: {
      Tuple t;
      for (const auto& arg : f.terms()) t.push_back(term_value(s, x, arg, rho));
      return s.holds(f.symbol(), x, t);
    }
    case Connective::And:
      return kripke(s, x, f.lhs(), rho) && kripke(s, x, f.rhs(), rho);
    case Connective::Or:
      return kripke(s, x, f.lhs(), rho) || kripke(s, x, f.rhs(), rho);
    case Connective::Not:
      return above([&](NodeId y) { return !kripke(s, y, f.body(), rho); });
    case Connective::Implies:
      return above([&](NodeId y) { return !kripke(s, y, f.lhs(), rho) || kripke(s, y, f.rhs(), rho); });
    case Connective::Exists:
      for (Element a = 0; a < s.fiber_size(x); ++a) {
        Germs next = rho;
        next[f.symbol()] = {x, a};
        if (kripke(s, x, f.body(), next)) return true;
      }
      return false;
    case Connective::Forall:
      return above([&](NodeId y) {
        for (Element a = 0; a < s.fiber_size(y); ++a) {
          Germs next = rho;
          next[f.symbol()] = {y, a};
          if (!kripke(s, y, f.body(), next)) return false;
        }
        return true;
      });
  }
  throw std::logic_error("unreachable");
}

Germs germs_at(const Environment& env, NodeId x) {
  Germs rho;
  for (const auto& [v, sigma] : env) rho[v] = {x, sigma.at(x)};
  return rho;
}

OSet restrict_oset(const Site& site, const OSet& f, NodeId q) {
  OSet g{q, {}};
  for (const auto& [r, members] : f.graph) {
    if (site.leq(q, r)) g.graph[r] = members;
  }
  return g;
}

namespace {

void choose(const Site& site, NodeId p, const std::vector<NodeId>& nodes, std::size_t i,
            const std::vector<std::set<OSet>>& lower, OSet& current, std::set<OSet>& out) {
  if (i == nodes.size()) {
    for (const auto& [q, members] : current.graph) {
      for (const auto& g : members) {
        for (NodeId r : nodes) {
          if (site.leq(q, r) && !current.graph.at(r).count(restrict_oset(site, g, r))) return;
        }
      }
    }
    out.insert(current);
    return;
  }
  const NodeId q = nodes[i];
  const std::vector<OSet> pool(lower[q].begin(), lower[q].end());
  for (std::size_t mask = 0; mask < (std::size_t{1} << pool.size()); ++mask) {
    std::set<OSet> pick;
    for (std::size_t j = 0; j < pool.size(); ++j) {
      if (mask >> j & 1U) pick.insert(pool[j]);
    }
    current.graph[q] = pick;
    choose(site, p, nodes, i + 1, lower, current, out);
  }
  current.graph.erase(q);
}

}  // namespace

std::vector<std::vector<std::set<OSet>>> hierarchy(const Site& site, std::size_t alpha) {
  std::vector<std::vector<std::set<OSet>>> levels(alpha + 1, std::vector<std::set<OSet>>(site.size()));
  for (std::size_t a = 1; a <= alpha; ++a) {
    for (NodeId p = 0; p < site.size(); ++p) {
      const Nodes up = up_of(site, {p});
      const std::vector<NodeId> nodes(up.begin(), up.end());
      OSet current{p, {}};
      choose(site, p, nodes, 0, levels[a - 1], current, levels[a][p]);
    }
  }
  return levels;
}

}  // namespace sheafwb::oracle
