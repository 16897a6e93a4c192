#include "rcm/samplers.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rcm/estimators.hpp"

namespace rcm {

namespace {
constexpr std::uint64_t kCftpStream = 0x43465450;   // draw stream for CFTP time indices
constexpr std::uint64_t kChainStream = 0x636861696e;
}  // namespace

HeatBathChain::HeatBathChain(const Graph& g, const RCParams& params)
    : g_(&g),
      params_(params),
      state_(g.edge_count()),
      uf_(g.vertex_count()) {
    if (!(params.p > 0.0 && params.p < 1.0))
        throw std::invalid_argument("heat bath: requires 0 < p < 1");
    const double p = params.p, q = params.q;
    close_joined_ = 1.0 - p;
    close_isolated_ = (1.0 - p) * q / (p + (1.0 - p) * q);
}

bool HeatBathChain::joined_off_edge(const BondConfig& state, int e) const {
    uf_.reset(g_->vertex_count());
    for (int i = 0; i < g_->edge_count(); ++i) {
        if (i == e || !state.open(i)) continue;
        const Edge& ed = g_->edge(i);
        if (!ed.is_loop()) uf_.merge(ed.u, ed.v);
    }
    return uf_.connected(g_->edge(e).u, g_->edge(e).v);
}

void HeatBathChain::step_state(BondConfig& state, const UpdateDraw& draw) const {
    const double close = joined_off_edge(state, draw.edge) ? close_joined_ : close_isolated_;
    // u == threshold counts as closed; strict inequality opens
    state.set(draw.edge, draw.u > close);
}

BondConfig heat_bath_step(const Graph& g, const RCParams& params, const BondConfig& omega,
                          const UpdateDraw& draw) {
    HeatBathChain chain(g, params);
    chain.set_state(omega);
    chain.step(draw);
    return chain.state();
}

GlauberRates glauber_rates(const Graph& g, const RCParams& params, const BondConfig& omega,
                           int e) {
    UnionFind uf(g.vertex_count());
    for (int i = 0; i < g.edge_count(); ++i) {
        if (i == e || !omega.open(i)) continue;
        const Edge& ed = g.edge(i);
        if (!ed.is_loop()) uf.merge(ed.u, ed.v);
    }
    const int D = uf.connected(g.edge(e).u, g.edge(e).v) ? 0 : 1;
    return {params.p, (1.0 - params.p) * std::pow(params.q, D)};
}

UpdateDraw cftp_draw(const Graph& g, std::uint64_t seed, std::uint64_t t) {
    CounterRng rng(seed, kCftpStream);
    UpdateDraw d;
    d.edge = static_cast<int>((static_cast<unsigned __int128>(rng.at(2 * t)) *
                               static_cast<std::uint64_t>(g.edge_count())) >> 64);
    d.u = static_cast<double>(rng.at(2 * t + 1) >> 11) * 0x1.0p-53;
    return d;
}

BondConfig cftp_sample(const Graph& g, const RCParams& params, std::uint64_t seed,
                       CftpStats* stats, std::uint64_t horizon_cap) {
    if (params.q < 1.0)
        throw std::invalid_argument("cftp_sample: q < 1 unsupported (no monotone envelope)");
    HeatBathChain chain(g, params);
    CftpBracket bracket;
    std::uint64_t steps = 0;

    for (std::uint64_t horizon = 1;; horizon *= 2) {
        if (horizon > horizon_cap)
            throw std::runtime_error("cftp_sample: no coalescence by horizon cap");
        bracket.lower = BondConfig(g.edge_count(), false);
        bracket.upper = BondConfig(g.edge_count(), true);
        // run from time -horizon to 0 reusing the draw at each time index
        for (std::uint64_t t = horizon; t >= 1; --t) {
            UpdateDraw d = cftp_draw(g, seed, t);
            chain.step_state(bracket.lower, d);
            chain.step_state(bracket.upper, d);
            ++steps;
            if (!bracket.lower.dominated_by(bracket.upper))
                throw std::logic_error("cftp_sample: sandwich violated (non-monotone update)");
        }
        if (bracket.lower == bracket.upper) {
            if (stats) {
                stats->horizon = horizon;
                stats->steps = steps;
            }
            return bracket.lower;
        }
    }
}

SpinConfig spins_given_bonds(const Graph& g, const BondConfig& omega, int q, CounterRng& rng) {
    if (q < 2) throw std::invalid_argument("spins_given_bonds: q must be >= 2");
    ClusterDecomposition cd = cluster_decompose(g, omega);
    std::vector<int> cluster_spin(cd.k);
    for (int c = 0; c < cd.k; ++c)
        cluster_spin[c] = 1 + static_cast<int>(rng.next_below(q));
    SpinConfig s;
    s.q = q;
    s.spin.resize(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) s.spin[v] = cluster_spin[cd.label[v]];
    return s;
}

BondConfig bonds_given_spins(const Graph& g, const SpinConfig& sigma, double p, CounterRng& rng) {
    BondConfig w(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (sigma.spin[ed.u] != sigma.spin[ed.v]) continue;
        if (rng.next_unit() < p) w.set(e, true);
    }
    return w;
}

SpinConfig sw_step(const Graph& g, double p, int q, const SpinConfig& sigma, CounterRng& rng,
                   BondConfig* bonds_out) {
    BondConfig w = bonds_given_spins(g, sigma, p, rng);
    if (bonds_out) *bonds_out = w;
    return spins_given_bonds(g, w, q, rng);
}

std::string ProbeSeries::to_csv() const {
    std::ostringstream os;
    os << "step,observable,replica\n";
    for (std::size_t r = 0; r < value.size(); ++r)
        for (std::size_t s = 0; s < value[r].size(); ++s)
            os << s << ',' << value[r][s] << ',' << r << '\n';
    return os.str();
}

ProbeSeries mixing_probe(const Graph& g, const RCParams& params, Dynamics dynamics,
                         const std::function<double(const Graph&, const BondConfig&)>& observable,
                         int steps, int replicas, std::uint64_t seed) {
    ProbeSeries out;
    out.value.resize(replicas);
    const int q_int = static_cast<int>(params.q);
    if (dynamics == Dynamics::swendsen_wang && (params.q != q_int || q_int < 2))
        throw std::invalid_argument("mixing_probe: Swendsen-Wang needs integer q >= 2");

    for (int r = 0; r < replicas; ++r) {
        CounterRng rng(seed, kChainStream + static_cast<std::uint64_t>(r));
        auto& series = out.value[r];
        series.reserve(steps + 1);
        if (dynamics == Dynamics::heat_bath) {
            HeatBathChain chain(g, params);
            chain.set_state(BondConfig(g.edge_count(), false));
            series.push_back(observable(g, chain.state()));
            for (int s = 0; s < steps; ++s) {
                for (int i = 0; i < g.edge_count(); ++i) {
                    UpdateDraw d;
                    d.edge = static_cast<int>(rng.next_below(g.edge_count()));
                    d.u = rng.next_unit();
                    chain.step(d);
                }
                series.push_back(observable(g, chain.state()));
            }
        } else {
            SpinConfig sigma;
            sigma.q = q_int;
            sigma.spin.assign(g.vertex_count(), 1);
            BondConfig bonds(g.edge_count());
            series.push_back(observable(g, bonds));  // all closed at step 0
            for (int s = 0; s < steps; ++s) {
                sigma = sw_step(g, params.p, q_int, sigma, rng, &bonds);
                series.push_back(observable(g, bonds));
            }
        }
    }

    // pooled tail statistics (second half of each replica)
    std::vector<double> tail;
    for (const auto& series : out.value)
        for (std::size_t s = series.size() / 2; s < series.size(); ++s) tail.push_back(series[s]);
    BatchMeans bm = batch_means(tail);
    out.mean = bm.mean;
    out.stderr_batch = bm.se;
    return out;
}

}  // namespace rcm
