#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sheafwb/formula.hpp"
#include "sheafwb/vset.hpp"

namespace sheafwb {

// hat of the von Neumann natural k.
VSet natural(Universe& u, std::size_t k, NodeId p);

// The truth value of an up-set K seen from q: t(r) = { hat(0)(r) } if r in K, else empty.
VSet truth_vset(Universe& u, NodeSet k, NodeId q);
// Omega at p, realised as the power object of hat(1); its members at q are the t_K for the
// up-sets K of [q).
VSet omega_classifier(Universe& u, NodeId p);
// G_k = P(hat(k)).
VSet subsets_of_natural(Universe& u, std::size_t k, NodeId p);

// chi_H(q) = { (hat(n)(q), t_K) : n < k } with K = { r >= q : hat(n)(r) in H(r) }.
VSet chi_char(Universe& u, VSet h, std::size_t k);

// Every f based at the common base of a and b that is a function a -> b at each node,
// compatibly with restriction.
std::vector<VSet> enumerate_functions(Universe& u, VSet a, VSet b);
// The set of functions a -> b as a variable set.
VSet function_space(Universe& u, VSet a, VSet b);

// For every q above the base: f(q) consists of pairs (x, y) with x in a(q), y in b(q), and
// each x in a(q) has exactly one such y.
bool is_function_fiberwise(Universe& u, VSet f, VSet a, VSet b);
bool is_injective_fiberwise(Universe& u, VSet f, VSet a, VSet b);
bool is_surjective_fiberwise(Universe& u, VSet f, VSet a, VSet b);

// Membership-language statements with free variables f, A, B.
Formula function_formula();
Formula injective_formula();
Formula surjective_formula();

struct ChiReport {
  std::size_t g_members = 0;      // forced members of G_k at p
  std::size_t exp_members = 0;    // forced functions k -> Omega at p
  std::size_t omega_members = 0;  // forced members of Omega at p
  std::size_t checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

struct ChiOptions {
  std::size_t max_k = 2;
  std::size_t max_nodes = 2;
};

// Builds chi = { (H, chi_H) } over G_k and checks, fiberwise and through the forcing evaluator,
// that it is an injective and surjective function G_k -> Omega^k.
ChiReport chi_check(Universe& u, NodeId p, std::size_t k, const ChiOptions& options = {});

struct NoSurjectionReport {
  std::size_t functions = 0;  // forced functions k -> G_k examined, over all q >= p
  std::size_t checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

NoSurjectionReport no_surjection_check(Universe& u, NodeId p, std::size_t k,
                                       const ChiOptions& options = {});

}  // namespace sheafwb
