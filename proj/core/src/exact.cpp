#include "rcm/exact.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "rcm/duality.hpp"
#include "rcm/rng.hpp"

namespace rcm {

namespace {

void check_cap(const Graph& g, int cap_edges, const char* who) {
    if (g.edge_count() > cap_edges)
        throw std::invalid_argument(std::string(who) + ": enumeration cap exceeded");
    if (g.edge_count() > 62)
        throw std::invalid_argument(std::string(who) + ": mask enumeration limited to 62 edges");
}

double config_weight(const Graph& g, const RCParams& params, std::uint64_t mask, UnionFind& uf) {
    int k = component_count_mask(g, mask, uf);
    int open = __builtin_popcountll(mask);
    return std::pow(params.p, open) * std::pow(1.0 - params.p, g.edge_count() - open) *
           std::pow(params.q, k);
}

}  // namespace

bool ExactDistribution::strictly_positive() const {
    for (double v : prob)
        if (!(v > 0.0)) return false;
    return true;
}

double partition_enumerate(const Graph& g, const RCParams& params, int cap_edges, int workers) {
    check_cap(g, cap_edges, "partition_enumerate");
    const int m = g.edge_count();
    const std::uint64_t total = 1ull << m;

    // Fixed shard plan (independent of the worker count) with pairwise tree
    // reduction keeps the floating-point sum bit-stable.
    const int shards = m >= 14 ? 64 : 1;
    const std::uint64_t per = total / shards;
    std::vector<double> partial(shards, 0.0);

    auto run_shard = [&](int s) {
        UnionFind uf(g.vertex_count());
        const std::uint64_t lo = s * per;
        const std::uint64_t hi = (s == shards - 1) ? total : lo + per;
        double acc = 0.0;
        for (std::uint64_t mask = lo; mask < hi; ++mask)
            acc += config_weight(g, params, mask, uf);
        partial[s] = acc;
    };

    if (workers <= 1 || shards == 1) {
        for (int s = 0; s < shards; ++s) run_shard(s);
    } else {
        const int nt = std::min(workers, shards);
        std::vector<std::thread> pool;
        pool.reserve(nt);
        for (int t = 0; t < nt; ++t)
            pool.emplace_back([&, t] {
                for (int s = t; s < shards; s += nt) run_shard(s);
            });
        for (auto& th : pool) th.join();
    }

    while (partial.size() > 1) {
        std::vector<double> next;
        for (std::size_t i = 0; i + 1 < partial.size(); i += 2) next.push_back(partial[i] + partial[i + 1]);
        if (partial.size() % 2) next.push_back(partial.back());
        partial = std::move(next);
    }
    return partial[0];
}

ExactDistribution exact_distribution(const Graph& g, const RCParams& params, int cap_edges) {
    check_cap(g, cap_edges, "exact_distribution");
    const int m = g.edge_count();
    ExactDistribution d;
    d.edge_count = m;
    d.prob.resize(1ull << m);
    UnionFind uf(g.vertex_count());
    double z = 0.0;
    for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
        double w = config_weight(g, params, mask, uf);
        d.prob[mask] = w;
        z += w;
    }
    for (double& v : d.prob) v /= z;
    d.z = z;
    return d;
}

double event_probability(const Graph& g, const RCParams& params, const EventPredicate& event,
                         int cap_edges) {
    check_cap(g, cap_edges, "event_probability");
    const int m = g.edge_count();
    UnionFind uf(g.vertex_count());
    double z = 0.0, hit = 0.0;
    for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
        double w = config_weight(g, params, mask, uf);
        z += w;
        if (event(BondConfig::from_mask(m, mask))) hit += w;
    }
    return hit / z;
}

double expectation(const Graph& g, const RCParams& params,
                   const std::function<double(const BondConfig&)>& f, int cap_edges) {
    check_cap(g, cap_edges, "expectation");
    const int m = g.edge_count();
    UnionFind uf(g.vertex_count());
    double z = 0.0, acc = 0.0;
    for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
        double w = config_weight(g, params, mask, uf);
        z += w;
        acc += w * f(BondConfig::from_mask(m, mask));
    }
    return acc / z;
}

double conditional_edge_probability(const Graph& g, const RCParams& params, int e,
                                    const BondConfig& rest) {
    if (rest.edge_count() != g.edge_count())
        throw std::invalid_argument("conditional_edge_probability: configuration length mismatch");
    UnionFind uf(g.vertex_count());
    for (int i = 0; i < g.edge_count(); ++i) {
        if (i == e || !rest.open(i)) continue;
        const Edge& ed = g.edge(i);
        if (!ed.is_loop()) uf.merge(ed.u, ed.v);
    }
    const bool joined = uf.connected(g.edge(e).u, g.edge(e).v);
    return params.open_prob(joined);
}

double conditional_edge_probability_enumerated(const Graph& g, const RCParams& params, int e,
                                               const BondConfig& rest, int cap_edges) {
    check_cap(g, cap_edges, "conditional_edge_probability_enumerated");
    UnionFind uf(g.vertex_count());
    std::uint64_t base = 0;
    for (int i = 0; i < g.edge_count(); ++i)
        if (i != e && rest.open(i)) base |= 1ull << i;
    double w_open = config_weight(g, params, base | (1ull << e), uf);
    double w_closed = config_weight(g, params, base, uf);
    return w_open / (w_open + w_closed);
}

Graph delete_edge(const Graph& g, int e) {
    std::vector<Edge> edges;
    edges.reserve(g.edge_count() - 1);
    for (int i = 0; i < g.edge_count(); ++i)
        if (i != e) edges.push_back(g.edge(i));
    return Graph(g.vertex_count(), std::move(edges));
}

Graph contract_edge(const Graph& g, int e) {
    if (g.edge(e).is_loop()) return delete_edge(g, e);  // contracting a loop deletes it
    const int a = std::min(g.edge(e).u, g.edge(e).v);
    const int b = std::max(g.edge(e).u, g.edge(e).v);
    auto remap = [&](int v) { return v == b ? a : (v > b ? v - 1 : v); };
    std::vector<Edge> edges;
    edges.reserve(g.edge_count() - 1);
    for (int i = 0; i < g.edge_count(); ++i)
        if (i != e) edges.push_back({remap(g.edge(i).u), remap(g.edge(i).v)});
    return Graph(g.vertex_count() - 1, std::move(edges));
}

bool deletion_contraction_conditionals_check(const Graph& g, const RCParams& params, int e,
                                             double tol, int cap_edges) {
    check_cap(g, cap_edges, "deletion_contraction_conditionals_check");
    const int m = g.edge_count();
    ExactDistribution full = exact_distribution(g, params, cap_edges);
    ExactDistribution del = exact_distribution(delete_edge(g, e), params, cap_edges);
    ExactDistribution con = exact_distribution(contract_edge(g, e), params, cap_edges);

    // mask over E minus e -> mask over E with edge e set to j
    auto lift = [&](std::uint64_t sub, int j) {
        std::uint64_t low = sub & ((1ull << e) - 1);
        std::uint64_t high = (sub >> e) << (e + 1);
        return low | high | (static_cast<std::uint64_t>(j) << e);
    };

    double p_closed = 0.0, p_open = 0.0;
    for (std::uint64_t sub = 0; sub < (1ull << (m - 1)); ++sub) {
        p_closed += full.prob[lift(sub, 0)];
        p_open += full.prob[lift(sub, 1)];
    }
    for (std::uint64_t sub = 0; sub < (1ull << (m - 1)); ++sub) {
        double cond0 = full.prob[lift(sub, 0)] / p_closed;
        double cond1 = full.prob[lift(sub, 1)] / p_open;
        if (std::abs(cond0 - del.prob[sub]) > tol) return false;
        if (std::abs(cond1 - con.prob[sub]) > tol) return false;
    }
    return true;
}

double potts_correlation(const Graph& g, double beta, double J, int q, int x, int y) {
    if (q < 2) throw std::invalid_argument("potts_correlation: q must be an integer >= 2");
    const int n = g.vertex_count();
    double states = std::pow(static_cast<double>(q), n);
    if (states > double(1 << 24))
        throw std::invalid_argument("potts_correlation: spin enumeration cap exceeded");

    std::vector<int> spin(n, 0);  // 0..q-1 internally
    double z = 0.0, agree_mass = 0.0;
    const double bj = beta * J;
    for (;;) {
        int same_edges = 0;
        for (const Edge& e : g.edges())
            if (spin[e.u] == spin[e.v]) ++same_edges;
        double w = std::exp(bj * same_edges);
        z += w;
        if (spin[x] == spin[y]) agree_mass += w;
        int i = 0;
        while (i < n && ++spin[i] == q) spin[i++] = 0;
        if (i == n) break;
    }
    return agree_mass / z - 1.0 / q;
}

bool correlation_connection_check(const Graph& g, double beta, double J, int q, int x, int y,
                                  double tol) {
    double tau = potts_correlation(g, beta, J, q, x, y);
    RCParams params(potts_to_rc_p(beta, J), static_cast<double>(q));
    UnionFind uf(g.vertex_count());
    double conn = event_probability(g, params, [&](const BondConfig& w) {
        uf.reset(g.vertex_count());
        for (int e = 0; e < g.edge_count(); ++e)
            if (w.open(e) && !g.edge(e).is_loop()) uf.merge(g.edge(e).u, g.edge(e).v);
        return uf.connected(x, y);
    });
    return std::abs(tau - (1.0 - 1.0 / q) * conn) < tol;
}

double russo_derivative(const Graph& g, const RCParams& params, const EventPredicate& event,
                        int cap_edges) {
    if (!(params.p > 0.0 && params.p < 1.0))
        throw std::invalid_argument("russo_derivative: requires 0 < p < 1");
    check_cap(g, cap_edges, "russo_derivative");
    const int m = g.edge_count();
    UnionFind uf(g.vertex_count());
    double z = 0.0, e_open = 0.0, p_a = 0.0, e_open_a = 0.0;
    for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
        double w = config_weight(g, params, mask, uf);
        int open = __builtin_popcountll(mask);
        z += w;
        e_open += w * open;
        if (event(BondConfig::from_mask(m, mask))) {
            p_a += w;
            e_open_a += w * open;
        }
    }
    e_open /= z;
    p_a /= z;
    e_open_a /= z;
    return (e_open_a - e_open * p_a) / (params.p * (1.0 - params.p));
}

bool holley_condition_check(const ExactDistribution& upper, const ExactDistribution& lower,
                            double slack) {
    if (upper.edge_count != lower.edge_count)
        throw std::invalid_argument("holley_condition_check: measures on different cubes");
    if (!upper.strictly_positive() || !lower.strictly_positive())
        throw std::invalid_argument("holley_condition_check: zero-probability configuration");
    const std::uint64_t total = 1ull << upper.edge_count;
    for (std::uint64_t a = 0; a < total; ++a)
        for (std::uint64_t b = 0; b < total; ++b)
            if (upper.prob[a | b] * lower.prob[a & b] < upper.prob[a] * lower.prob[b] - slack)
                return false;
    return true;
}

void verify_increasing(const Graph& g, const EventPredicate& event, int cap_edges) {
    check_cap(g, cap_edges, "verify_increasing");
    const int m = g.edge_count();
    for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
        if (!event(BondConfig::from_mask(m, mask))) continue;
        for (int e = 0; e < m; ++e) {
            if (mask >> e & 1) continue;
            if (!event(BondConfig::from_mask(m, mask | (1ull << e))))
                throw std::invalid_argument("fkg_check: event is not increasing");
        }
    }
}

bool fkg_check(const Graph& g, const RCParams& params, const EventPredicate& a,
               const EventPredicate& b, double slack, int cap_edges) {
    verify_increasing(g, a, cap_edges);
    verify_increasing(g, b, cap_edges);
    const int m = g.edge_count();
    UnionFind uf(g.vertex_count());
    double z = 0.0, pa = 0.0, pb = 0.0, pab = 0.0;
    for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
        double w = config_weight(g, params, mask, uf);
        z += w;
        BondConfig c = BondConfig::from_mask(m, mask);
        bool ia = a(c), ib = b(c);
        if (ia) pa += w;
        if (ib) pb += w;
        if (ia && ib) pab += w;
    }
    return pab / z >= (pa / z) * (pb / z) - slack;
}

// --- q ↓ 0 ---------------------------------------------------------------

double QZeroSpec::p_of_q(double q) const {
    switch (regime) {
        case QZeroRegime::fixed_p: return p;
        case QZeroRegime::ust: return std::sqrt(q);
        case QZeroRegime::forest: return q;
        case QZeroRegime::alpha: return alpha * q;
    }
    return p;
}

ExactDistribution q_to_zero_limit_measure(const Graph& g, const QZeroSpec& spec, int cap_edges) {
    check_cap(g, cap_edges, "q_to_zero_limit_measure");
    const int m = g.edge_count();
    const int n = g.vertex_count();
    UnionFind uf(n);

    if (spec.regime == QZeroRegime::fixed_p || spec.regime == QZeroRegime::ust) {
        if (component_count_mask(g, ~0ull, uf) != 1)
            throw std::invalid_argument("q_to_zero_limit_measure: graph must be connected");
    }

    ExactDistribution d;
    d.edge_count = m;
    d.prob.assign(1ull << m, 0.0);
    double z = 0.0;
    for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
        int k = component_count_mask(g, mask, uf);
        int open = __builtin_popcountll(mask);
        double w = 0.0;
        switch (spec.regime) {
            case QZeroRegime::fixed_p:
                if (k == 1) w = std::pow(spec.p, open) * std::pow(1.0 - spec.p, m - open);
                break;
            case QZeroRegime::ust:
                if (k == 1 && open == n - 1) w = 1.0;
                break;
            case QZeroRegime::forest:
                if (k == n - open) w = 1.0;  // no loops/circuits
                break;
            case QZeroRegime::alpha: {
                const double b = spec.alpha / (1.0 + spec.alpha);
                if (k == n - open) w = std::pow(b, open) * std::pow(1.0 - b, m - open);
                break;
            }
        }
        d.prob[mask] = w;
        z += w;
    }
    if (z == 0.0) throw std::invalid_argument("q_to_zero_limit_measure: empty support");
    for (double& v : d.prob) v /= z;
    d.z = z;
    return d;
}

std::vector<double> q_to_zero_convergence(const Graph& g, const QZeroSpec& spec,
                                          const std::vector<double>& q_sequence, int cap_edges) {
    ExactDistribution limit = q_to_zero_limit_measure(g, spec, cap_edges);
    std::vector<double> out;
    out.reserve(q_sequence.size());
    for (double q : q_sequence) {
        RCParams params(spec.p_of_q(q), q);
        out.push_back(total_variation(exact_distribution(g, params, cap_edges), limit));
    }
    return out;
}

double total_variation(const ExactDistribution& a, const ExactDistribution& b) {
    if (a.prob.size() != b.prob.size())
        throw std::invalid_argument("total_variation: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.prob.size(); ++i) s += std::abs(a.prob[i] - b.prob[i]);
    return 0.5 * s;
}

// --- mod-q flows -----------------------------------------------------------

std::uint64_t count_mod_q_flows(const Graph& g, int q, int cap_edges) {
    if (q < 2) throw std::invalid_argument("count_mod_q_flows: q must be an integer >= 2");
    if (g.edge_count() > cap_edges)
        throw std::invalid_argument("count_mod_q_flows: flow enumeration cap exceeded");

    // Loops carry any of the q-1 non-zero values with no balance constraint.
    std::vector<int> work;  // non-loop edge ids
    int loops = 0;
    for (int e = 0; e < g.edge_count(); ++e) {
        if (g.edge(e).is_loop())
            ++loops;
        else
            work.push_back(e);
    }

    std::uint64_t loop_factor = 1;
    for (int i = 0; i < loops; ++i) loop_factor *= static_cast<std::uint64_t>(q - 1);
    if (work.empty()) return loop_factor;

    const int m = static_cast<int>(work.size());
    // last position at which each vertex's balance becomes final
    std::vector<int> last(g.vertex_count(), -1);
    for (int i = 0; i < m; ++i) {
        last[g.edge(work[i]).u] = i;
        last[g.edge(work[i]).v] = i;
    }

    std::vector<int> residual(g.vertex_count(), 0);
    std::uint64_t count = 0;

    // DFS over assignments f(e) in 1..q-1, oriented u -> v as stored;
    // prune as soon as a vertex's incident edges are exhausted.
    std::function<void(int)> rec = [&](int i) {
        if (i == m) {
            ++count;
            return;
        }
        const Edge& ed = g.edge(work[i]);
        for (int f = 1; f < q; ++f) {
            residual[ed.u] = (residual[ed.u] - f % q + q) % q;
            residual[ed.v] = (residual[ed.v] + f) % q;
            bool ok = true;
            if (last[ed.u] == i && residual[ed.u] != 0) ok = false;
            if (ok && last[ed.v] == i && residual[ed.v] != 0) ok = false;
            if (ok) rec(i + 1);
            residual[ed.u] = (residual[ed.u] + f) % q;
            residual[ed.v] = (residual[ed.v] - f % q + q) % q;
        }
    };
    rec(0);
    return count * loop_factor;
}

FlowsReport flows_identity_check(const Graph& g, int q, double lambda, int x, int y,
                                 long long samples, std::uint64_t seed, int flow_cap_edges) {
    if (x == y) throw std::invalid_argument("flows_identity_check: x and y must differ");
    FlowsReport rep;
    rep.samples = samples;

    const double p = 1.0 - std::exp(-lambda * q);
    RCParams params(p, static_cast<double>(q));
    UnionFind uf(g.vertex_count());
    rep.exact_lhs = (q - 1) * event_probability(g, params, [&](const BondConfig& w) {
        uf.reset(g.vertex_count());
        for (int e = 0; e < g.edge_count(); ++e)
            if (w.open(e) && !g.edge(e).is_loop()) uf.merge(g.edge(e).u, g.edge(e).v);
        return uf.connected(x, y);
    });

    CounterRng rng(seed, /*stream=*/0x466c6f77);  // "Flow"
    const double el = std::exp(-lambda);

    auto poisson = [&](void) {
        int k = 0;
        double prod = rng.next_unit();
        while (prod > el) {
            ++k;
            prod *= rng.next_unit();
        }
        return k;
    };

    double sum_f = 0.0, sum_fxy = 0.0, sum_ff = 0.0, sum_xyxy = 0.0, sum_cross = 0.0;
    for (long long s = 0; s < samples; ++s) {
        std::vector<Edge> multi;
        for (;;) {
            multi.clear();
            for (const Edge& e : g.edges()) {
                int copies = poisson();
                for (int c = 0; c < copies; ++c) multi.push_back(e);
            }
            if (static_cast<int>(multi.size()) + 1 <= flow_cap_edges) break;
            ++rep.truncations;  // over the flow cap: resample, recorded
        }
        Graph gp(g.vertex_count(), multi);
        multi.push_back({x, y});
        Graph gpxy(g.vertex_count(), multi);

        double f = static_cast<double>(count_mod_q_flows(gp, q, flow_cap_edges));
        double fxy = static_cast<double>(count_mod_q_flows(gpxy, q, flow_cap_edges));
        sum_f += f;
        sum_fxy += fxy;
        sum_ff += f * f;
        sum_xyxy += fxy * fxy;
        sum_cross += f * fxy;
    }

    const double n = static_cast<double>(samples);
    rep.mean_f = sum_f / n;
    rep.mean_fxy = sum_fxy / n;
    rep.ratio = rep.mean_fxy / rep.mean_f;
    const double var_f = (sum_ff / n - rep.mean_f * rep.mean_f);
    const double var_xy = (sum_xyxy / n - rep.mean_fxy * rep.mean_fxy);
    const double cov = (sum_cross / n - rep.mean_f * rep.mean_fxy);
    const double r = rep.ratio;
    double var_ratio = (var_xy - 2.0 * r * cov + r * r * var_f) / (rep.mean_f * rep.mean_f * n);
    rep.ratio_se = var_ratio > 0.0 ? std::sqrt(var_ratio) : 0.0;
    rep.within_3se = std::abs(rep.ratio - rep.exact_lhs) <= 3.0 * rep.ratio_se;
    return rep;
}

// --- outer circuits ---------------------------------------------------------

Graph wired_box(int n, std::vector<int>* origin_edges) {
    if (n < 1) throw std::invalid_argument("wired_box: radius must be >= 1");
    const int side = 2 * n + 1;
    Graph g = build_box_lattice(2, {side, side}, BoundarySpec{BoundaryKind::wired});
    if (origin_edges) {
        origin_edges->clear();
        for (int e = 0; e < g.edge_count(); ++e)
            if (g.edge(e).u == g.origin_vertex() || g.edge(e).v == g.origin_vertex())
                origin_edges->push_back(e);
    }
    return g;
}

std::vector<std::vector<int>> concentric_dual_circuits(int n) {
    const int side = 2 * n + 1;
    Graph free_box = build_box_lattice(2, {side, side}, BoundarySpec{BoundaryKind::free});
    const auto& coords = free_box.coords();
    auto linf = [&](int v) {
        return std::max(std::abs(coords[v][0] - n), std::abs(coords[v][1] - n));
    };
    std::vector<std::vector<int>> circuits;
    for (int r = 1; r <= n; ++r) {
        std::vector<int> crossed;
        for (int e = 0; e < free_box.edge_count(); ++e) {
            int a = linf(free_box.edge(e).u), b = linf(free_box.edge(e).v);
            if (std::min(a, b) == r - 1 && std::max(a, b) == r) crossed.push_back(e);
        }
        circuits.push_back(std::move(crossed));  // wired build preserves edge order/ids
    }
    return circuits;
}

OuterCircuitResult outer_circuit_bound_check(int n, double q,
                                             const std::vector<std::vector<int>>& circuits,
                                             int cap_edges) {
    Graph g = wired_box(n);
    check_cap(g, cap_edges, "outer_circuit_bound_check");
    const double p = self_dual_point(q);
    RCParams params(p, q);

    const int m = g.edge_count();
    std::vector<std::uint64_t> circuit_mask;
    for (const auto& c : circuits) {
        std::uint64_t mask = 0;
        for (int e : c) mask |= 1ull << e;
        circuit_mask.push_back(mask);
    }

    UnionFind uf(g.vertex_count());
    std::vector<double> hit(circuits.size(), 0.0);
    double z = 0.0;
    for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
        double w = config_weight(g, params, mask, uf);
        z += w;
        // circuit i is the outer one iff all its edges are closed and no
        // outer-more circuit (later in the list) is all-closed
        for (int i = static_cast<int>(circuits.size()) - 1; i >= 0; --i) {
            if ((mask & circuit_mask[i]) == 0) {
                hit[i] += w;
                break;
            }
        }
    }

    OuterCircuitResult res;
    res.all_within_bound = true;
    res.all_within_mechanism_bound = true;
    const double base = q / std::pow(1.0 + std::sqrt(q), 4.0);
    for (std::size_t i = 0; i < circuits.size(); ++i) {
        double prob = hit[i] / z;
        double mech = std::pow(base, static_cast<double>(circuits[i].size()) / 4.0);
        res.probability.push_back(prob);
        res.mechanism_bound.push_back(mech);
        res.bound.push_back(mech / q);
        if (prob > mech / q) res.all_within_bound = false;
        if (prob > mech) res.all_within_mechanism_bound = false;
    }
    return res;
}

}  // namespace rcm
