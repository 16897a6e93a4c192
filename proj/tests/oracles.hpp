#ifndef RCM_TESTS_ORACLES_HPP
#define RCM_TESTS_ORACLES_HPP

// Independent brute-force oracles.  Everything here deliberately avoids the
// library's union-find/enumeration code paths: components are counted by
// depth-first search and partition sums accumulate in a different order.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "rcm/bond_config.hpp"
#include "rcm/graph.hpp"

namespace oracle {

inline int dfs_component_count(const rcm::Graph& g, std::uint64_t mask) {
    const int n = g.vertex_count();
    std::vector<std::vector<int>> adj(n);
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!(mask >> e & 1)) continue;
        adj[g.edge(e).u].push_back(g.edge(e).v);
        adj[g.edge(e).v].push_back(g.edge(e).u);
    }
    std::vector<char> seen(n, 0);
    int k = 0;
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        ++k;
        stack.push_back(s);
        seen[s] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
    }
    return k;
}

inline bool dfs_connected(const rcm::Graph& g, std::uint64_t mask, int x, int y) {
    if (x == y) return true;
    const int n = g.vertex_count();
    std::vector<std::vector<int>> adj(n);
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!(mask >> e & 1)) continue;
        adj[g.edge(e).u].push_back(g.edge(e).v);
        adj[g.edge(e).v].push_back(g.edge(e).u);
    }
    std::vector<char> seen(n, 0);
    std::vector<int> stack{x};
    seen[x] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (v == y) return true;
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    return false;
}

// Z by plain subset loop, high-to-low mask order (different accumulation
// order from the library's).
inline double brute_z(const rcm::Graph& g, double p, double q) {
    const int m = g.edge_count();
    double z = 0.0;
    for (std::int64_t mask = (1ll << m) - 1; mask >= 0; --mask) {
        int open = __builtin_popcountll(static_cast<std::uint64_t>(mask));
        int k = dfs_component_count(g, static_cast<std::uint64_t>(mask));
        z += std::pow(p, open) * std::pow(1.0 - p, m - open) * std::pow(q, k);
    }
    return z;
}

inline double brute_event_probability(const rcm::Graph& g, double p, double q,
                                      const std::function<bool(std::uint64_t)>& event) {
    const int m = g.edge_count();
    double z = 0.0, hit = 0.0;
    for (std::int64_t mask = (1ll << m) - 1; mask >= 0; --mask) {
        auto um = static_cast<std::uint64_t>(mask);
        int open = __builtin_popcountll(um);
        int k = dfs_component_count(g, um);
        double w = std::pow(p, open) * std::pow(1.0 - p, m - open) * std::pow(q, k);
        z += w;
        if (event(um)) hit += w;
    }
    return hit / z;
}

inline std::vector<std::uint64_t> spanning_tree_masks(const rcm::Graph& g) {
    std::vector<std::uint64_t> out;
    const int m = g.edge_count();
    for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
        if (__builtin_popcountll(mask) != g.vertex_count() - 1) continue;
        if (dfs_component_count(g, mask) == 1) out.push_back(mask);
    }
    return out;
}

inline std::vector<std::uint64_t> forest_masks(const rcm::Graph& g) {
    std::vector<std::uint64_t> out;
    const int m = g.edge_count();
    for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
        int open = __builtin_popcountll(mask);
        if (dfs_component_count(g, mask) == g.vertex_count() - open) out.push_back(mask);
    }
    return out;
}

// Central finite difference of an event probability in p.
inline double fd_derivative(const std::function<double(double)>& prob_at, double p,
                            double h = 1e-4) {
    return (prob_at(p + h) - prob_at(p - h)) / (2.0 * h);
}

// Independent bisection for the giant-component equation, using the
// exponential residual form rather than the library's log form.
inline double theta_bisect(double lambda, double q) {
    auto f = [&](double th) {
        return std::exp(lambda * th) * (1.0 - th) - (1.0 + (q - 1.0) * th);
    };
    // largest root: start from the right of the last sign change on a grid
    double lo = -1.0, hi = -1.0;
    double prev = 1.0 - 1e-12, fprev = f(prev);
    for (int i = 99999; i >= 1; --i) {
        double th = (1.0 - 1e-12) * i / 100000;
        double v = f(th);
        if ((v > 0) != (fprev > 0)) {
            lo = th;
            hi = prev;
            break;
        }
        prev = th;
        fprev = v;
    }
    if (lo < 0) return 0.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if ((f(mid) > 0) == (f(lo) > 0))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace oracle

#endif
