#ifndef RCM_SAMPLERS_HPP
#define RCM_SAMPLERS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rcm/bond_config.hpp"
#include "rcm/cluster.hpp"
#include "rcm/exact.hpp"
#include "rcm/graph.hpp"
#include "rcm/params.hpp"
#include "rcm/rng.hpp"

namespace rcm {

// Potts spins, one per vertex, values 1..q.
struct SpinConfig {
    std::vector<int> spin;
    int q = 2;
};

// One heat-bath update: edge index plus the uniform variate deciding it.
struct UpdateDraw {
    int edge = 0;
    double u = 0.0;
};

struct CftpBracket {
    BondConfig lower;
    BondConfig upper;
};

// Single-edge heat-bath kernel.  The update keeps everything but `draw.edge`
// and redraws that edge: it closes iff u <= (1-p) when the endpoints are
// joined off the edge, iff u <= (1-p)q/(p+(1-p)q) otherwise (u == threshold
// counts as closed).  Non-decreasing in ω for q >= 1.
BondConfig heat_bath_step(const Graph& g, const RCParams& params, const BondConfig& omega,
                          const UpdateDraw& draw);

// Chain object owning the union-find scratch; used by CFTP and estimators.
class HeatBathChain {
  public:
    HeatBathChain(const Graph& g, const RCParams& params);
    void set_state(const BondConfig& omega) { state_ = omega; }
    const BondConfig& state() const { return state_; }
    void step(const UpdateDraw& draw) { step_state(state_, draw); }
    // apply the update to an external state (CFTP brackets share one chain)
    void step_state(BondConfig& state, const UpdateDraw& draw) const;
    bool endpoints_joined_off_edge(int e) const { return joined_off_edge(state_, e); }
    bool joined_off_edge(const BondConfig& state, int e) const;  // K_e

  private:
    const Graph* g_;
    RCParams params_;
    double close_joined_;    // 1-p
    double close_isolated_;  // (1-p)q / (p+(1-p)q)
    BondConfig state_;
    mutable UnionFind uf_;
};

// Continuous-time single-edge rates of the reversible dynamics:
// acquire at rate p, lose at rate (1-p) q^{D(e,ω_e)} with D = 1 iff the
// endpoints are disconnected in ω with e closed.  Reported only; the
// discrete heat-bath chain is the one simulated.
struct GlauberRates {
    double acquire = 0.0;
    double lose = 0.0;
};
GlauberRates glauber_rates(const Graph& g, const RCParams& params, const BondConfig& omega,
                           int e);

// The draw used at time -t of every CFTP horizon: a pure function of
// (seed, t), so horizons share their randomness exactly.
UpdateDraw cftp_draw(const Graph& g, std::uint64_t seed, std::uint64_t t);

struct CftpStats {
    std::uint64_t horizon = 0;  // coalescence horizon actually used
    std::uint64_t steps = 0;    // total bracket steps across restarts
};

// Exact sample from φ_{p,q} by monotone coupling from the past with
// doubling horizons (q >= 1, 0 < p < 1).  Throws for q < 1 and on
// non-coalescence by the horizon cap.
BondConfig cftp_sample(const Graph& g, const RCParams& params, std::uint64_t seed,
                       CftpStats* stats = nullptr,
                       std::uint64_t horizon_cap = 1ull << 30);

// Edwards-Sokal conditionals.
SpinConfig spins_given_bonds(const Graph& g, const BondConfig& omega, int q, CounterRng& rng);
BondConfig bonds_given_spins(const Graph& g, const SpinConfig& sigma, double p, CounterRng& rng);

// One Swendsen-Wang sweep: bonds from spins, then fresh uniform labels per
// cluster.  If `bonds_out` is non-null it receives the intermediate ω.
SpinConfig sw_step(const Graph& g, double p, int q, const SpinConfig& sigma, CounterRng& rng,
                   BondConfig* bonds_out = nullptr);

// --- mixing probe ---------------------------------------------------------

enum class Dynamics { heat_bath, swendsen_wang };

struct ProbeSeries {
    // value[r][s] = observable after step s of replica r (index 0 = initial).
    std::vector<std::vector<double>> value;
    double mean = 0.0;
    double stderr_batch = 0.0;  // batch means over the pooled tail
    std::string to_csv() const; // step,observable,replica
};

// Observable is a function of the bond configuration; for Swendsen-Wang the
// per-sweep bond layer is used.  A heat-bath "step" here is one sweep of
// |E| single-edge updates so the two time axes are comparable.
ProbeSeries mixing_probe(const Graph& g, const RCParams& params, Dynamics dynamics,
                         const std::function<double(const Graph&, const BondConfig&)>& observable,
                         int steps, int replicas, std::uint64_t seed);

}  // namespace rcm

#endif
