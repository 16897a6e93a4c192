#ifndef RCM_MEANFIELD_HPP
#define RCM_MEANFIELD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rcm/bond_config.hpp"
#include "rcm/graph.hpp"
#include "rcm/rng.hpp"

namespace rcm {

struct MeanFieldParams {
    int n = 100;          // vertices of K_n
    double lambda = 1.0;  // p = lambda / n
    double q = 1.0;

    MeanFieldParams() = default;
    MeanFieldParams(int n_, double lambda_, double q_);
};

// Critical intensity on the complete graph: q for 0<q<=2, else
// 2 (q-1)/(q-2) log(q-1); continuous at q = 2.
double lambda_c(double q);

// Largest root in [0,1) of e^{λθ} = (1+(q-1)θ)/(1-θ): grid scan from the
// right plus bisection to 1e-12.  Returns exactly 0.0 when no positive
// root exists.
double theta_root(double lambda, double q);

enum class MeanFieldDynamics { direct_er, swendsen_wang, heat_bath };

struct GiantFractionStats {
    double mean = 0.0;
    double se = 0.0;
    int replicas = 0;
    double theta_prediction = 0.0;
    bool approximate = false;  // heat-bath route (non-integer q)
    std::string to_csv_row(const MeanFieldParams& p) const;
};

// Mean and standard error of (largest cluster)/n over independent samples.
// q = 1 uses direct Erdős-Rényi sampling; integer q >= 2 uses Swendsen-Wang
// sweeps from a cold start; other q uses a long heat-bath run and is
// labelled approximate.
GiantFractionStats simulate_Kn(const MeanFieldParams& params, MeanFieldDynamics dynamics,
                               int burn_in_sweeps, int samples, std::uint64_t seed);

// Cluster colouring: each open cluster of (g, ω) is kept with probability
// rho, independently; vertices of discarded clusters are deleted.  With
// rho = 1/q on K_n the surviving graph is an Erdős-Rényi graph on a random
// vertex set.
struct ColorReduction {
    std::vector<int> kept_vertices;       // original ids, ascending
    Graph subgraph;                       // induced on kept vertices
    BondConfig config;                    // ω restricted to surviving edges
};
ColorReduction color_reduction_sample(const Graph& g, const BondConfig& omega, double rho,
                                      CounterRng& rng);

// Largest-component fraction of an Erdős-Rényi sample, the q = 1 oracle.
double er_giant_fraction(int n, double p, CounterRng& rng);

}  // namespace rcm

#endif
