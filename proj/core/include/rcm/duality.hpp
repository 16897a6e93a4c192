#ifndef RCM_DUALITY_HPP
#define RCM_DUALITY_HPP

#include <string>

#include "rcm/bond_config.hpp"
#include "rcm/exact.hpp"
#include "rcm/graph.hpp"

namespace rcm {

// Planar dual: one dual vertex per face, dual edge e^d crossing primal
// edge e.  Dual edge ids equal primal ids, so the bijection is the
// identity on indices; it is still stored explicitly.
struct DualPair {
    Graph primal;
    Graph dual;
    std::vector<int> edge_bijection;  // primal e -> dual e
};

// Requires an embedding; rejects rotation systems failing the Euler check
// on the all-open configuration (non-planar embedding).
DualPair planar_dual(const Graph& g);

// ω^d(e^d) = 1 - ω(e).
BondConfig dual_config(const DualPair& pair, const BondConfig& omega);

// p^d = q(1-p) / (q(1-p) + p); involutive, with p=0 ↔ p^d=1 by convention.
double dual_parameter(double p, double q);

// sqrt(q)/(1+sqrt(q)), the fixed point of the dual-parameter map.
double self_dual_point(double q);

// max_ω |φ_{G,p,q}(ω) - φ_{G^d,p^d,q}(ω^d)| < tol, both sides enumerated.
bool duality_identity_check(const DualPair& pair, double p, double q, double tol = 1e-12,
                            int cap_edges = kDefaultEnumerationCap);

// sqrt(q)/(sqrt(1-1/q)+sqrt(q)) for q > 1 (critical-point upper bound used
// to annotate scans).
double asymmetric_upper_bound(double q);

// Edge-list text of both graphs plus the "e -> e^d" bijection block.
std::string to_dual_pair_text(const DualPair& pair);

}  // namespace rcm

#endif
