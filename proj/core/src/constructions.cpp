#include "sheafwb/constructions.hpp"

#include "sheafwb/error.hpp"
#include "sheafwb/hierarchy.hpp"

namespace sheafwb {

namespace {

NodeId common_base(const Universe& u, VSet f, VSet g) {
  if (u.base(f) != u.base(g)) {
    throw InvalidArgument("base mismatch: " + u.label(f) + " and " + u.label(g));
  }
  return u.base(f);
}

// Builds f with f(q) = make(q) for q in [base).
template <typename Make>
VSet build(Universe& u, NodeId base, const Make& make) {
  Graph graph(u.site().size());
  for (NodeId q : u.site().basic(base).members()) graph[q] = make(q);
  return u.intern(base, std::move(graph));
}

}  // namespace

VSet hat_embed(Universe& u, const HFSet& a, NodeId p) {
  auto& cache = u.hat_cache();
  if (auto it = cache.find({a, p}); it != cache.end()) return it->second;
  const VSet out = build(u, p, [&](NodeId q) {
    std::vector<VSet> members;
    for (const auto& b : a.members()) members.push_back(hat_embed(u, b, q));
    return members;
  });
  cache.emplace(std::make_pair(a, p), out);
  return out;
}

HFSet collapse_iso(Universe& u, NodeId m, VSet f) {
  if (!u.site().is_isolated(m)) {
    throw InvalidArgument("node " + u.site().name(m) + " is not maximal");
  }
  if (u.base(f) != m) throw InvalidArgument(u.label(f) + " is not based at " + u.site().name(m));
  std::vector<HFSet> members;
  for (VSet h : u.at(f, m)) members.push_back(collapse_iso(u, m, h));
  return HFSet::of(std::move(members));
}

VSet suc(Universe& u, VSet f) {
  return build(u, u.base(f), [&](NodeId q) {
    auto members = u.at(f, q);
    members.push_back(u.restrict(f, q));
    return members;
  });
}

VSet pair_set(Universe& u, VSet x, VSet y) {
  return build(u, common_base(u, x, y), [&](NodeId r) {
    return std::vector<VSet>{u.restrict(x, r), u.restrict(y, r)};
  });
}

VSet singleton(Universe& u, VSet x) { return pair_set(u, x, x); }

VSet ordered_pair(Universe& u, VSet f, VSet g) {
  return pair_set(u, singleton(u, f), pair_set(u, f, g));
}

VSet product(Universe& u, VSet f, VSet g) {
  return build(u, common_base(u, f, g), [&](NodeId q) {
    std::vector<VSet> members;
    const auto left = u.at(f, q);
    const auto right = u.at(g, q);
    for (VSet a : left) {
      for (VSet b : right) members.push_back(ordered_pair(u, a, b));
    }
    return members;
  });
}

VSet union_set(Universe& u, VSet family) {
  return build(u, u.base(family), [&](NodeId q) {
    std::vector<VSet> members;
    for (VSet y : u.at(family, q)) {
      const auto& inner = u.at(y, q);
      members.insert(members.end(), inner.begin(), inner.end());
    }
    return members;
  });
}

VSet power_object(Universe& u, VSet f, std::size_t max_candidates) {
  return build(u, u.base(f), [&](NodeId q) {
    return enumerate_coherent(
        u, q, [&](NodeId r) { return u.at(f, r); }, max_candidates);
  });
}

VSet comprehension_set(const MembershipSheaf& ms, VSet z, const std::string& variable,
                       const Formula& phi, const Environment& params) {
  Universe& u = ms.universe();
  Forcer forcer(ms.sheaf());
  return build(u, u.base(z), [&](NodeId q) {
    std::vector<VSet> members;
    const Environment outer = restrict_environment(params, u.site().basic(q));
    for (VSet x : u.at(z, q)) {
      Environment env = outer;
      env.insert_or_assign(variable, ms.section(x));
      if (forcer.forces_at(q, phi, env)) members.push_back(x);
    }
    return members;
  });
}

VSet replacement_set(const MembershipSheaf& ms, VSet a, const std::string& x_var,
                     const std::string& y_var, const Formula& phi, const Environment& params) {
  Universe& u = ms.universe();
  Forcer forcer(ms.sheaf());
  return build(u, u.base(a), [&](NodeId q) {
    std::vector<VSet> members;
    const Environment outer = restrict_environment(params, u.site().basic(q));
    for (VSet y : ms.carrier(q)) {
      for (VSet x : u.at(a, q)) {
        Environment env = outer;
        env.insert_or_assign(x_var, ms.section(x));
        env.insert_or_assign(y_var, ms.section(y));
        if (forcer.forces_at(q, phi, env)) {
          members.push_back(y);
          break;
        }
      }
    }
    return members;
  });
}

}  // namespace sheafwb
