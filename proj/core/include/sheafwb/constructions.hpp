#pragma once

#include <string>
#include <vector>

#include "sheafwb/forcing.hpp"
#include "sheafwb/formula.hpp"
#include "sheafwb/hfset.hpp"
#include "sheafwb/membership_sheaf.hpp"
#include "sheafwb/vset.hpp"

namespace sheafwb {

// hat(a)(p)(q) = { hat(b)(q) : b in a }.
VSet hat_embed(Universe& u, const HFSet& a, NodeId p);
// Inverse of hat_embed at a node with [m) = {m}.
HFSet collapse_iso(Universe& u, NodeId m, VSet f);

// Suc(f)(q) = { f|q } U f(q).
VSet suc(Universe& u, VSet f);
// z(r) = { x|r, y|r }; both arguments must share a base.
VSet pair_set(Universe& u, VSet x, VSet y);
VSet singleton(Universe& u, VSet x);
// (f, g)(q) = { {f}|q, {f,g}|q }.
VSet ordered_pair(Universe& u, VSet f, VSet g);
// (f x g)(q) = { (a, b) : a in f(q), b in g(q) }.
VSet product(Universe& u, VSet f, VSet g);
// A(q) = union of Y(q) over Y in F(q).
VSet union_set(Universe& u, VSet family);
// g in P(f)(q) iff g is based at q and g(r) is a subset of f(r) for all r >= q.
VSet power_object(Universe& u, VSet f, std::size_t max_candidates = 20);

// y(q) = { x in z(q) : x forces phi at q }, with `variable` bound to x and `params` supplying
// the other free variables. Members of z must lie in the sheaf's carriers.
VSet comprehension_set(const MembershipSheaf& ms, VSet z, const std::string& variable,
                       const Formula& phi, const Environment& params = {});

// B(q) = { y in carrier(q) : some x in A(q) forces phi(x, y) at q }.
VSet replacement_set(const MembershipSheaf& ms, VSet a, const std::string& x_var,
                     const std::string& y_var, const Formula& phi,
                     const Environment& params = {});

}  // namespace sheafwb
