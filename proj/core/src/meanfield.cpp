#include "rcm/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rcm/cluster.hpp"
#include "rcm/samplers.hpp"

namespace rcm {

MeanFieldParams::MeanFieldParams(int n_, double lambda_, double q_)
    : n(n_), lambda(lambda_), q(q_) {
    if (n < 1) throw std::invalid_argument("MeanFieldParams: n must be >= 1");
    if (!(lambda > 0.0)) throw std::invalid_argument("MeanFieldParams: lambda must be positive");
    if (lambda / n > 1.0) throw std::invalid_argument("MeanFieldParams: p = lambda/n exceeds 1");
    if (!(q >= 1.0)) throw std::invalid_argument("MeanFieldParams: q must be >= 1");
}

double lambda_c(double q) {
    if (!(q > 0.0)) throw std::invalid_argument("lambda_c: q must be positive");
    if (q <= 2.0) return q;
    return 2.0 * ((q - 1.0) / (q - 2.0)) * std::log(q - 1.0);
}

namespace {
double theta_residual(double theta, double lambda, double q) {
    return lambda * theta - std::log((1.0 + (q - 1.0) * theta) / (1.0 - theta));
}
}  // namespace

double theta_root(double lambda, double q) {
    if (!(lambda > 0.0)) throw std::invalid_argument("theta_root: lambda must be positive");
    if (!(q >= 1.0)) throw std::invalid_argument("theta_root: q must be >= 1");

    // g(θ) = λθ - log((1+(q-1)θ)/(1-θ)) has θ=0 as a root and up to two
    // positive roots for q > 2.  Scan from the right so the largest root's
    // bracket is found first, then bisect.
    const int grid = 10000;
    const double hi_end = 1.0 - 1e-9;
    double prev_theta = hi_end;
    double prev_val = theta_residual(prev_theta, lambda, q);  // -> -inf near 1
    for (int i = grid - 1; i >= 1; --i) {
        double theta = hi_end * i / grid;
        double val = theta_residual(theta, lambda, q);
        if (val == 0.0) return theta;
        if ((val > 0.0) != (prev_val > 0.0)) {
            double lo = theta, hi = prev_theta;
            double flo = val;
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (lo + hi);
                double fmid = theta_residual(mid, lambda, q);
                if ((fmid > 0.0) == (flo > 0.0)) {
                    lo = mid;
                    flo = fmid;
                } else {
                    hi = mid;
                }
                if (hi - lo < 1e-14) break;
            }
            return 0.5 * (lo + hi);
        }
        prev_theta = theta;
        prev_val = val;
    }
    return 0.0;  // no positive root: no percolation, exactly zero
}

double er_giant_fraction(int n, double p, CounterRng& rng) {
    // G(n,p) by geometric edge skipping over the lexicographic pair order
    UnionFind uf(n);
    if (p >= 1.0) return 1.0;
    if (p > 0.0) {
        const double logq = std::log1p(-p);
        long long total = static_cast<long long>(n) * (n - 1) / 2;
        long long idx = -1;
        for (;;) {
            double u = rng.next_unit();
            long long skip = 1 + static_cast<long long>(std::floor(std::log1p(-u) / logq));
            idx += skip;
            if (idx >= total) break;
            // invert pair index -> (u,v), row-major over u < v
            long long r = idx;
            int a = 0;
            long long row = n - 1;
            while (r >= row) {
                r -= row;
                --row;
                ++a;
            }
            int b = a + 1 + static_cast<int>(r);
            uf.merge(a, b);
        }
    }
    std::vector<int> size(n, 0);
    int best = 0;
    for (int v = 0; v < n; ++v) {
        int s = ++size[uf.find(v)];
        best = std::max(best, s);
    }
    return static_cast<double>(best) / n;
}

namespace {

// Swendsen-Wang sweep specialised to K_n: within each spin class, open
// edges form an Erdős-Rényi graph, sampled by skipping.
void sw_sweep_Kn(std::vector<int>& spin, int q, double p, UnionFind& uf, CounterRng& rng,
                 int* giant_out) {
    const int n = static_cast<int>(spin.size());
    uf.reset(n);
    std::vector<std::vector<int>> classes(q);
    for (int v = 0; v < n; ++v) classes[spin[v] - 1].push_back(v);
    const double logq = std::log1p(-p);
    for (const auto& cls : classes) {
        const long long m = static_cast<long long>(cls.size());
        if (m < 2 || p <= 0.0) continue;
        long long total = m * (m - 1) / 2;
        long long idx = -1;
        for (;;) {
            double u = rng.next_unit();
            idx += 1 + static_cast<long long>(std::floor(std::log1p(-u) / logq));
            if (idx >= total) break;
            long long r = idx;
            int a = 0;
            long long row = m - 1;
            while (r >= row) {
                r -= row;
                --row;
                ++a;
            }
            int b = a + 1 + static_cast<int>(r);
            uf.merge(cls[a], cls[b]);
        }
    }
    // giant fraction of the bond layer, then fresh labels per cluster
    std::vector<int> size(n, 0);
    int best = 0;
    for (int v = 0; v < n; ++v) best = std::max(best, ++size[uf.find(v)]);
    if (giant_out) *giant_out = best;
    std::vector<int> label(n, 0);
    for (int v = 0; v < n; ++v) {
        int r = uf.find(v);
        if (!label[r]) label[r] = 1 + static_cast<int>(rng.next_below(q));
        spin[v] = label[r];
    }
}

}  // namespace

GiantFractionStats simulate_Kn(const MeanFieldParams& params, MeanFieldDynamics dynamics,
                               int burn_in_sweeps, int samples, std::uint64_t seed) {
    if (params.n > 100000) throw std::invalid_argument("simulate_Kn: n exceeds desk cap 1e5");
    const double p = params.lambda / params.n;

    GiantFractionStats out;
    out.replicas = samples;
    out.theta_prediction = theta_root(params.lambda, params.q);

    double sum = 0.0, sum2 = 0.0;
    if (dynamics == MeanFieldDynamics::direct_er) {
        if (params.q != 1.0)
            throw std::invalid_argument("simulate_Kn: direct sampling is the q = 1 route");
        for (int s = 0; s < samples; ++s) {
            CounterRng rng(seed, 0x4b6e0000ull + s);
            double f = er_giant_fraction(params.n, p, rng);
            sum += f;
            sum2 += f * f;
        }
    } else if (dynamics == MeanFieldDynamics::swendsen_wang) {
        const int q = static_cast<int>(params.q);
        if (params.q != q || q < 2)
            throw std::invalid_argument("simulate_Kn: Swendsen-Wang needs integer q >= 2");
        for (int s = 0; s < samples; ++s) {
            CounterRng rng(seed, 0x4b6e5357ull * 131 + s);
            std::vector<int> spin(params.n, 1);  // ordered start
            UnionFind uf(params.n);
            int giant = 0;
            for (int sweep = 0; sweep < burn_in_sweeps + 1; ++sweep)
                sw_sweep_Kn(spin, q, p, uf, rng, &giant);
            double f = static_cast<double>(giant) / params.n;
            sum += f;
            sum2 += f * f;
        }
    } else {
        // heat bath on the full K_n edge set: approximate for non-integer q
        out.approximate = true;
        Graph kn = build_complete_graph(params.n);
        RCParams rc(p, params.q);
        for (int s = 0; s < samples; ++s) {
            CounterRng rng(seed, 0x4b6e4842ull * 131 + s);
            HeatBathChain chain(kn, rc);
            chain.set_state(BondConfig(kn.edge_count(), false));
            const long long sweep = kn.edge_count();
            for (long long step = 0; step < sweep * burn_in_sweeps; ++step) {
                UpdateDraw d;
                d.edge = static_cast<int>(rng.next_below(kn.edge_count()));
                d.u = rng.next_unit();
                chain.step(d);
            }
            ClusterDecomposition cd = cluster_decompose(kn, chain.state());
            double f = static_cast<double>(*std::max_element(cd.sizes.begin(), cd.sizes.end())) /
                       params.n;
            sum += f;
            sum2 += f * f;
        }
    }

    out.mean = sum / samples;
    double var = sum2 / samples - out.mean * out.mean;
    out.se = samples > 1 ? std::sqrt(std::max(0.0, var) / (samples - 1)) : 0.0;
    return out;
}

std::string GiantFractionStats::to_csv_row(const MeanFieldParams& p) const {
    std::ostringstream os;
    os << p.lambda << ',' << p.q << ',' << p.n << ',' << mean << ',' << se << ','
       << theta_prediction;
    return os.str();
}

ColorReduction color_reduction_sample(const Graph& g, const BondConfig& omega, double rho,
                                      CounterRng& rng) {
    if (!(rho >= 0.0 && rho <= 1.0))
        throw std::invalid_argument("color_reduction_sample: rho outside [0,1]");
    ClusterDecomposition cd = cluster_decompose(g, omega);
    std::vector<char> red(cd.k, 0);
    for (int c = 0; c < cd.k; ++c) red[c] = rng.next_unit() < rho ? 1 : 0;

    ColorReduction out;
    std::vector<int> new_id(g.vertex_count(), -1);
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (red[cd.label[v]]) {
            new_id[v] = static_cast<int>(out.kept_vertices.size());
            out.kept_vertices.push_back(v);
        }
    }
    std::vector<Edge> edges;
    std::vector<std::uint8_t> open;
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (new_id[ed.u] >= 0 && new_id[ed.v] >= 0) {
            edges.push_back({new_id[ed.u], new_id[ed.v]});
            open.push_back(omega.open(e) ? 1 : 0);
        }
    }
    out.subgraph = Graph(static_cast<int>(out.kept_vertices.size()), std::move(edges));
    out.config = BondConfig(out.subgraph.edge_count());
    for (int e = 0; e < out.subgraph.edge_count(); ++e) out.config.set(e, open[e]);
    return out;
}

}  // namespace rcm
