#include "rcm/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rcm/cluster.hpp"
#include "rcm/duality.hpp"
#include "rcm/exact.hpp"
#include "rcm/io.hpp"

namespace rcm {

BatchMeans batch_means(const std::vector<double>& xs, int batches) {
    BatchMeans out;
    const int n = static_cast<int>(xs.size());
    if (n == 0) return out;
    double total = 0.0;
    for (double x : xs) total += x;
    out.mean = total / n;
    if (n < 2) return out;

    if (n < 2 * batches) {
        // too few points for batching: plain standard error
        double ss = 0.0;
        for (double x : xs) ss += (x - out.mean) * (x - out.mean);
        out.se = std::sqrt(ss / (n - 1) / n);
        return out;
    }
    const int m = n / batches;
    const int used = m * batches;
    double used_total = 0.0;
    std::vector<double> bm(batches, 0.0);
    for (int b = 0; b < batches; ++b) {
        for (int i = 0; i < m; ++i) bm[b] += xs[b * m + i];
        bm[b] /= m;
        used_total += bm[b];
    }
    const double mean_used = used_total / batches;
    double ss = 0.0;
    for (double v : bm) ss += (v - mean_used) * (v - mean_used);
    out.mean = mean_used;
    (void)used;
    out.se = std::sqrt(ss / (batches - 1) / batches);
    return out;
}

std::string EstimatorReport::to_csv_row() const {
    std::ostringstream os;
    os.precision(12);
    os << quantity << ',' << value << ',' << se << ',' << samples << ',' << seed << ',' << p << ','
       << q << ',' << sampler;
    return os.str();
}

std::string EstimatorReport::to_json() const {
    std::ostringstream os;
    os.precision(12);
    os << "{\"quantity\":\"" << quantity << "\",\"value\":" << value << ",\"stderr\":" << se
       << ",\"samples\":" << samples << ",\"seed\":" << seed << ",\"p\":" << p << ",\"q\":" << q
       << ",\"sampler\":\"" << sampler << "\"}";
    return os.str();
}

namespace {

using Observable = std::function<double(const Graph&, const BondConfig&, const ClusterDecomposition&)>;

std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t index) {
    return CounterRng(seed, index).at(0);
}

// One column of per-sample values per observable.
std::vector<std::vector<double>> draw_samples(const Graph& g, const RCParams& params,
                                              long long samples, std::uint64_t seed,
                                              const SamplerOptions& opt, bool start_all_open,
                                              const std::vector<Observable>& obs) {
    std::vector<std::vector<double>> cols(obs.size());
    for (auto& c : cols) c.resize(samples);

    if (opt.use_cftp) {
        // i.i.d. samples; sample index keys the stream, so any worker split
        // produces identical numbers
        auto run_range = [&](long long lo, long long hi) {
            for (long long s = lo; s < hi; ++s) {
                BondConfig w = cftp_sample(g, params, derived_seed(seed, s));
                ClusterDecomposition cd = cluster_decompose(g, w);
                for (std::size_t i = 0; i < obs.size(); ++i) cols[i][s] = obs[i](g, w, cd);
            }
        };
        const int workers = std::max(1, opt.workers);
        if (workers == 1) {
            run_range(0, samples);
        } else {
            std::vector<std::thread> pool;
            const long long per = (samples + workers - 1) / workers;
            for (int t = 0; t < workers; ++t) {
                long long lo = t * per, hi = std::min<long long>(samples, lo + per);
                if (lo >= hi) break;
                pool.emplace_back(run_range, lo, hi);
            }
            for (auto& th : pool) th.join();
        }
        return cols;
    }

    // heat bath: `workers` independent chains, thinned; deterministic for a
    // fixed (seed, workers, burn_in, thin)
    const int chains = std::max(1, opt.workers);
    const long long per_chain = (samples + chains - 1) / chains;
    auto run_chain = [&](int c) {
        CounterRng rng(derived_seed(seed, 0x48420000ull + c), 0x6368);
        HeatBathChain chain(g, params);
        chain.set_state(BondConfig(g.edge_count(), start_all_open));
        const long long sweep = g.edge_count();
        auto do_sweeps = [&](long long count) {
            for (long long i = 0; i < count * sweep; ++i) {
                UpdateDraw d;
                d.edge = static_cast<int>(rng.next_below(g.edge_count()));
                d.u = rng.next_unit();
                chain.step(d);
            }
        };
        do_sweeps(opt.burn_in_sweeps);
        for (long long s = 0; s < per_chain; ++s) {
            long long idx = c * per_chain + s;
            if (idx >= samples) break;
            do_sweeps(opt.thin_sweeps);
            ClusterDecomposition cd = cluster_decompose(g, chain.state());
            for (std::size_t i = 0; i < obs.size(); ++i)
                cols[i][idx] = obs[i](g, chain.state(), cd);
        }
    };
    if (chains == 1) {
        run_chain(0);
    } else {
        std::vector<std::thread> pool;
        for (int c = 0; c < chains; ++c) pool.emplace_back(run_chain, c);
        for (auto& th : pool) th.join();
    }
    return cols;
}

Observable boundary_connection_observable() {
    return [](const Graph& g, const BondConfig&, const ClusterDecomposition& cd) {
        const int origin = g.origin_vertex();
        for (int b : g.boundary_vertices())
            if (cd.label[b] == cd.label[origin]) return 1.0;
        return 0.0;
    };
}

Observable edge_density_observable() {
    return [](const Graph& g, const BondConfig& w, const ClusterDecomposition&) {
        return g.edge_count() ? static_cast<double>(w.open_count()) / g.edge_count() : 0.0;
    };
}

Observable giant_fraction_observable() {
    return [](const Graph& g, const BondConfig&, const ClusterDecomposition& cd) {
        return static_cast<double>(*std::max_element(cd.sizes.begin(), cd.sizes.end())) /
               g.vertex_count();
    };
}

}  // namespace

EstimatorReport theta_box_estimate(int n, int b, const RCParams& params, long long samples,
                                   std::uint64_t seed, const SamplerOptions& opt) {
    if (b != 0 && b != 1) throw std::invalid_argument("theta_box_estimate: b must be 0 or 1");
    const int side = 2 * n + 1;
    Graph g = build_box_lattice(2, {side, side},
                                BoundarySpec{b ? BoundaryKind::wired : BoundaryKind::free});
    auto cols = draw_samples(g, params, samples, seed, opt, /*start_all_open=*/b == 1,
                             {boundary_connection_observable()});
    BatchMeans bm = batch_means(cols[0]);
    EstimatorReport rep;
    rep.quantity = b ? "theta_proxy_wired" : "theta_proxy_free";
    rep.value = bm.mean;
    rep.se = bm.se;
    rep.samples = samples;
    rep.seed = seed;
    rep.p = params.p;
    rep.q = params.q;
    rep.sampler = opt.use_cftp ? "cftp" : "heat_bath";
    return rep;
}

EstimatorReport two_point_estimate(const Graph& g, const RCParams& params, int x, int y,
                                   long long samples, std::uint64_t seed,
                                   const SamplerOptions& opt) {
    Observable obs = [x, y](const Graph&, const BondConfig&, const ClusterDecomposition& cd) {
        return cd.label[x] == cd.label[y] ? 1.0 : 0.0;
    };
    auto cols = draw_samples(g, params, samples, seed, opt, false, {obs});
    BatchMeans bm = batch_means(cols[0]);
    EstimatorReport rep;
    rep.quantity = "two_point";
    rep.value = bm.mean;
    rep.se = bm.se;
    rep.samples = samples;
    rep.seed = seed;
    rep.p = params.p;
    rep.q = params.q;
    rep.sampler = opt.use_cftp ? "cftp" : "heat_bath";
    return rep;
}

EstimatorReport edge_density_estimate(const Graph& g, const RCParams& params, long long samples,
                                      std::uint64_t seed, const SamplerOptions& opt) {
    auto cols = draw_samples(g, params, samples, seed, opt, false, {edge_density_observable()});
    BatchMeans bm = batch_means(cols[0]);
    EstimatorReport rep;
    rep.quantity = "edge_density";
    rep.value = bm.mean;
    rep.se = bm.se;
    rep.samples = samples;
    rep.seed = seed;
    rep.p = params.p;
    rep.q = params.q;
    rep.sampler = opt.use_cftp ? "cftp" : "heat_bath";
    return rep;
}

ClusterStatistics cluster_statistics(const Graph& g, const RCParams& params, long long samples,
                                     std::uint64_t seed, const SamplerOptions& opt) {
    if (!g.has_coords())
        throw std::invalid_argument("cluster_statistics: graph carries no lattice coordinates");
    ClusterStatistics out;
    out.samples = samples;
    const int origin = g.origin_vertex();
    const auto& coords = g.coords();

    Observable size_obs = [&](const Graph&, const BondConfig&, const ClusterDecomposition& cd) {
        return static_cast<double>(cd.sizes[cd.label[origin]]);
    };
    Observable rad_obs = [&](const Graph& gg, const BondConfig&, const ClusterDecomposition& cd) {
        int lab = cd.label[origin];
        int best = 0;
        for (int v = 0; v < gg.vertex_count(); ++v) {
            if (cd.label[v] != lab || coords[v].empty()) continue;
            int d = 0;  // L1 norm
            for (std::size_t a = 0; a < coords[v].size(); ++a)
                d += std::abs(coords[v][a] - coords[origin][a]);
            best = std::max(best, d);
        }
        return static_cast<double>(best);
    };
    auto cols = draw_samples(g, params, samples, seed, opt, false, {size_obs, rad_obs});
    for (double v : cols[0]) out.size_histogram[static_cast<int>(v)] += 1;
    for (double v : cols[1]) out.radius_histogram[static_cast<int>(v)] += 1;
    return out;
}

std::string ClusterStatistics::to_csv() const {
    std::ostringstream os;
    os << "kind,value,count\n";
    for (const auto& [v, c] : size_histogram) os << "size," << v << ',' << c << '\n';
    for (const auto& [v, c] : radius_histogram) os << "radius," << v << ',' << c << '\n';
    return os.str();
}

ScanResult critical_scan(double q, const std::vector<double>& p_grid,
                         const std::vector<int>& box_sizes, int b, long long samples,
                         std::uint64_t seed, const SamplerOptions& opt) {
    ScanResult res;
    res.q = q;
    res.self_dual = self_dual_point(q);
    res.upper_bound = q > 1.0 ? asymmetric_upper_bound(q) : std::nan("");

    std::uint64_t cell = 0;
    for (int n : box_sizes) {
        const int side = 2 * n + 1;
        Graph g = build_box_lattice(2, {side, side},
                                    BoundarySpec{b ? BoundaryKind::wired : BoundaryKind::free});
        for (double p : p_grid) {
            ScanRow row;
            row.p = p;
            row.box = n;
            row.b = b;
            if (p <= 0.0 || p >= 1.0) {
                row.edge_density = p >= 1.0 ? 1.0 : 0.0;
                row.theta_proxy = p >= 1.0 ? 1.0 : 0.0;
                row.giant_fraction = p >= 1.0 ? 1.0 : 1.0 / g.vertex_count();
            } else {
                RCParams params(p, q);
                auto cols = draw_samples(g, params, samples, derived_seed(seed, cell), opt,
                                         /*start_all_open=*/b == 1,
                                         {edge_density_observable(), boundary_connection_observable(),
                                          giant_fraction_observable()});
                BatchMeans h = batch_means(cols[0]);
                BatchMeans th = batch_means(cols[1]);
                BatchMeans gf = batch_means(cols[2]);
                row.edge_density = h.mean;
                row.edge_density_se = h.se;
                row.theta_proxy = th.mean;
                row.theta_proxy_se = th.se;
                row.giant_fraction = gf.mean;
                row.giant_fraction_se = gf.se;
            }
            res.rows.push_back(row);
            ++cell;
        }
    }
    return res;
}

std::string ScanResult::to_csv() const {
    std::ostringstream os;
    os.precision(10);
    os << "# self_dual_point=" << self_dual << '\n';
    if (!std::isnan(upper_bound)) os << "# asymmetric_upper_bound=" << upper_bound << '\n';
    os << "p,box,b,edge_density,edge_density_se,theta_proxy,theta_proxy_se,giant_fraction,"
          "giant_fraction_se\n";
    for (const ScanRow& r : rows)
        os << r.p << ',' << r.box << ',' << r.b << ',' << r.edge_density << ','
           << r.edge_density_se << ',' << r.theta_proxy << ',' << r.theta_proxy_se << ','
           << r.giant_fraction << ',' << r.giant_fraction_se << '\n';
    return os.str();
}

}  // namespace rcm
