#ifndef RCM_EXACT_HPP
#define RCM_EXACT_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rcm/bond_config.hpp"
#include "rcm/cluster.hpp"
#include "rcm/graph.hpp"
#include "rcm/params.hpp"

namespace rcm {

inline constexpr int kDefaultEnumerationCap = 24;

using EventPredicate = std::function<bool(const BondConfig&)>;

// The full measure on Ω = {0,1}^E, config indexed by edge-bit mask.
struct ExactDistribution {
    std::vector<double> prob;  // size 2^|E|
    double z = 0.0;
    int edge_count = 0;

    double operator[](std::uint64_t mask) const { return prob[mask]; }
    bool strictly_positive() const;
};

// Z = Σ_ω p^{|η|} (1-p)^{|E|-|η|} q^{k(ω)}.  The 2^|E| range is split into
// a fixed shard plan and reduced pairwise, so the result is bit-identical
// for any thread count.
double partition_enumerate(const Graph& g, const RCParams& params,
                           int cap_edges = kDefaultEnumerationCap, int workers = 1);

ExactDistribution exact_distribution(const Graph& g, const RCParams& params,
                                     int cap_edges = kDefaultEnumerationCap);

double event_probability(const Graph& g, const RCParams& params, const EventPredicate& event,
                         int cap_edges = kDefaultEnumerationCap);

double expectation(const Graph& g, const RCParams& params,
                   const std::function<double(const BondConfig&)>& f,
                   int cap_edges = kDefaultEnumerationCap);

// Conditional probability that e is open given the configuration off e:
// p if the endpoints of e are joined by an open path not using e, else
// p/(p+(1-p)q).  `rest`'s entry at e is ignored.
double conditional_edge_probability(const Graph& g, const RCParams& params, int e,
                                    const BondConfig& rest);

// The same conditional computed from the enumerated measure (the check route).
double conditional_edge_probability_enumerated(const Graph& g, const RCParams& params, int e,
                                               const BondConfig& rest,
                                               int cap_edges = kDefaultEnumerationCap);

Graph delete_edge(const Graph& g, int e);
Graph contract_edge(const Graph& g, int e);

// φ_G(· | ω(e)=0) == φ_{G\e} and φ_G(· | ω(e)=1) == φ_{G.e}, both within tol.
bool deletion_contraction_conditionals_check(const Graph& g, const RCParams& params, int e,
                                             double tol = 1e-12,
                                             int cap_edges = kDefaultEnumerationCap);

// Exact Potts two-point correlation τ(x,y) = π(σ_x=σ_y) - 1/q at zero
// external field, by q^|V| enumeration.
double potts_correlation(const Graph& g, double beta, double J, int q, int x, int y);

// τ == (1-1/q) φ_{p,q}(x↔y) with p = 1-e^{-βJ}, within tol.
bool correlation_connection_check(const Graph& g, double beta, double J, int q, int x, int y,
                                  double tol = 1e-12);

// dφ(A)/dp = [φ(|η| 1_A) - φ(|η|) φ(A)] / (p(1-p)).
double russo_derivative(const Graph& g, const RCParams& params, const EventPredicate& event,
                        int cap_edges = kDefaultEnumerationCap);

// Pointwise condition upper(a∨b)·lower(a∧b) >= upper(a)·lower(b) for all
// a, b, certifying lower <=st upper.  With upper == lower this is the FKG
// lattice property.  Both measures must be strictly positive.
bool holley_condition_check(const ExactDistribution& upper, const ExactDistribution& lower,
                            double slack = 1e-12);

// Throws unless `event` is an up-set (checked by exhaustive up-closure scan).
void verify_increasing(const Graph& g, const EventPredicate& event,
                       int cap_edges = kDefaultEnumerationCap);

// φ(A∩B) >= φ(A)φ(B) - slack for increasing A, B.  True for q >= 1; may
// legitimately return false for q < 1.
bool fkg_check(const Graph& g, const RCParams& params, const EventPredicate& a,
               const EventPredicate& b, double slack = 1e-12,
               int cap_edges = kDefaultEnumerationCap);

// --- q ↓ 0 limits --------------------------------------------------------

enum class QZeroRegime {
    fixed_p,   // p fixed: percolation conditioned on connectedness
    ust,       // p = sqrt(q): uniform spanning tree
    forest,    // p = q: uniform forest
    alpha,     // p = αq: Bernoulli(α/(1+α)) conditioned circuit-free
};

struct QZeroSpec {
    QZeroRegime regime = QZeroRegime::ust;
    double p = 0.5;      // fixed_p only
    double alpha = 1.0;  // alpha only

    double p_of_q(double q) const;
};

ExactDistribution q_to_zero_limit_measure(const Graph& g, const QZeroSpec& spec,
                                          int cap_edges = kDefaultEnumerationCap);

// TV(φ_{p(q),q}, limit) for each q in the sequence.
std::vector<double> q_to_zero_convergence(const Graph& g, const QZeroSpec& spec,
                                          const std::vector<double>& q_sequence,
                                          int cap_edges = kDefaultEnumerationCap);

double total_variation(const ExactDistribution& a, const ExactDistribution& b);

// --- mod-q flows ----------------------------------------------------------

// Number of nowhere-zero mod-q flows; independent of edge orientations.
// Zero if the graph has a bridge.
std::uint64_t count_mod_q_flows(const Graph& g, int q, int cap_edges = 20);

struct FlowsReport {
    double ratio = 0.0;        // E_λ F_q(G_π^{x,y}) / E_λ F_q(G_π), Monte Carlo
    double ratio_se = 0.0;     // delta-method standard error
    double exact_lhs = 0.0;    // (q-1) φ_{p,q}(x↔y), p = 1-e^{-λq}, enumerated
    double mean_f = 0.0;
    double mean_fxy = 0.0;
    long long samples = 0;
    long long truncations = 0; // multigraphs over the flow cap (resampled)
    bool within_3se = false;
};

FlowsReport flows_identity_check(const Graph& g, int q, double lambda, int x, int y,
                                 long long samples, std::uint64_t seed,
                                 int flow_cap_edges = 20);

// --- outer circuits (first-order mechanism on the wired box) ---------------

struct OuterCircuitResult {
    std::vector<double> probability;      // P(Γ_i is the outermost all-closed circuit)
    std::vector<double> bound;            // (1/q)(q/(1+sqrt q)^4)^{|Γ|/4}
    std::vector<double> mechanism_bound;  // (q/(1+sqrt q)^4)^{|Γ|/4}
    bool all_within_bound = false;
    bool all_within_mechanism_bound = false;
};

// Wired box B(n) = [-n,n]^2 at p = sqrt(q)/(1+sqrt(q)).  Each circuit is
// given as the list of primal edge ids it crosses, ordered innermost to
// outermost; circuit i is "outer" when all its edges are closed and no
// later circuit in the list is all-closed.
OuterCircuitResult outer_circuit_bound_check(int n, double q,
                                             const std::vector<std::vector<int>>& circuits,
                                             int cap_edges = kDefaultEnumerationCap);

// The dual circuits concentric around the origin of B(n) that can be open
// under wired conditions; for n=1 this is the single length-4 circuit
// crossing the four origin-incident edges.
std::vector<std::vector<int>> concentric_dual_circuits(int n);

// Wired box builder used by the circuit check (exposed for tests):
// returns the identified multigraph and the list of origin-incident edge ids.
Graph wired_box(int n, std::vector<int>* origin_edges = nullptr);

}  // namespace rcm

#endif
