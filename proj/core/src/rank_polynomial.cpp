#include "rcm/rank_polynomial.hpp"

#include <cmath>
#include <stdexcept>

#include "rcm/cluster.hpp"
#include "rcm/exact.hpp"

namespace rcm {

std::uint64_t RankPolynomial::coeff(int r, int c) const {
    if (r < 0 || r >= static_cast<int>(coeff_.size())) return 0;
    if (c < 0 || c >= static_cast<int>(coeff_[r].size())) return 0;
    return coeff_[r][c];
}

void RankPolynomial::add(int r, int c, std::uint64_t count) {
    if (r >= static_cast<int>(coeff_.size())) coeff_.resize(r + 1);
    if (c >= static_cast<int>(coeff_[r].size())) coeff_[r].resize(c + 1, 0);
    coeff_[r][c] += count;
}

int RankPolynomial::max_corank() const {
    int m = 0;
    for (const auto& row : coeff_) m = std::max<int>(m, static_cast<int>(row.size()) - 1);
    return m;
}

std::uint64_t RankPolynomial::total_mass() const {
    std::uint64_t t = 0;
    for (const auto& row : coeff_)
        for (std::uint64_t c : row) t += c;
    return t;
}

double RankPolynomial::evaluate(double u, double v) const {
    double total = 0.0;
    for (int r = 0; r < static_cast<int>(coeff_.size()); ++r) {
        double vpow_total = 0.0;
        for (int c = static_cast<int>(coeff_[r].size()) - 1; c >= 0; --c)
            vpow_total = vpow_total * v + static_cast<double>(coeff_[r][c]);
        total += vpow_total * std::pow(u, r);
    }
    return total;
}

void RankPolynomial::accumulate(const RankPolynomial& other, int dr, int dc) {
    for (int r = 0; r < static_cast<int>(other.coeff_.size()); ++r)
        for (int c = 0; c < static_cast<int>(other.coeff_[r].size()); ++c)
            if (other.coeff_[r][c]) add(r + dr, c + dc, other.coeff_[r][c]);
}

void RankPolynomial::multiply_bridge_loop(int bridges, int loops) {
    // multiply by (1+u)^bridges (1+v)^loops via repeated shift-add
    for (int i = 0; i < bridges; ++i) {
        RankPolynomial shifted;
        shifted.coeff_.clear();
        shifted.accumulate(*this, 1, 0);
        shifted.accumulate(*this, 0, 0);
        coeff_ = std::move(shifted.coeff_);
    }
    for (int i = 0; i < loops; ++i) {
        RankPolynomial shifted;
        shifted.coeff_.clear();
        shifted.accumulate(*this, 0, 1);
        shifted.accumulate(*this, 0, 0);
        coeff_ = std::move(shifted.coeff_);
    }
}

bool RankPolynomial::operator==(const RankPolynomial& o) const {
    int rmax = std::max(max_rank(), o.max_rank());
    int cmax = std::max(max_corank(), o.max_corank());
    for (int r = 0; r <= rmax; ++r)
        for (int c = 0; c <= cmax; ++c)
            if (coeff(r, c) != o.coeff(r, c)) return false;
    return true;
}

namespace {

struct LightGraph {
    int n;
    std::vector<Edge> edges;
};

bool is_bridge(const LightGraph& g, int skip) {
    UnionFind uf(g.n);
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        if (e == skip || g.edges[e].u == g.edges[e].v) continue;
        uf.merge(g.edges[e].u, g.edges[e].v);
    }
    return !uf.connected(g.edges[skip].u, g.edges[skip].v);
}

LightGraph deleted(const LightGraph& g, int e) {
    LightGraph out{g.n, {}};
    out.edges.reserve(g.edges.size() - 1);
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i)
        if (i != e) out.edges.push_back(g.edges[i]);
    return out;
}

LightGraph contracted(const LightGraph& g, int e) {
    const int a = std::min(g.edges[e].u, g.edges[e].v);
    const int b = std::max(g.edges[e].u, g.edges[e].v);
    LightGraph out{g.n - 1, {}};
    out.edges.reserve(g.edges.size() - 1);
    auto remap = [&](int v) { return v == b ? a : (v > b ? v - 1 : v); };
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i)
        if (i != e) out.edges.push_back({remap(g.edges[i].u), remap(g.edges[i].v)});
    return out;
}

RankPolynomial dc(const LightGraph& g, std::uint64_t& budget) {
    if (budget == 0) throw std::runtime_error("rank_polynomial: recursion budget exceeded");
    --budget;

    int split = -1;
    int loops = 0, bridges = 0;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        if (g.edges[e].u == g.edges[e].v) {
            ++loops;
        } else if (is_bridge(g, e)) {
            ++bridges;
        } else {
            split = e;
            break;
        }
    }

    if (split < 0) {
        // only loops and bridges left: W = (1+u)^bridges (1+v)^loops
        RankPolynomial w;
        w.add(0, 0, 1);
        w.multiply_bridge_loop(bridges, loops);
        return w;
    }

    RankPolynomial w = dc(deleted(g, split), budget);
    w.accumulate(dc(contracted(g, split), budget), 1, 0);
    return w;
}

}  // namespace

RankPolynomial rank_polynomial(const Graph& g, std::uint64_t budget) {
    LightGraph lg{g.vertex_count(), g.edges()};
    return dc(lg, budget);
}

RankPolynomial rank_polynomial_enumerate(const Graph& g, int cap_edges) {
    const int m = g.edge_count();
    if (m > cap_edges) throw std::invalid_argument("rank_polynomial_enumerate: enumeration cap exceeded");
    RankPolynomial w;
    UnionFind uf(g.vertex_count());
    for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
        int k = component_count_mask(g, mask, uf);
        int open = __builtin_popcountll(mask);
        int r = g.vertex_count() - k;
        int c = open - g.vertex_count() + k;
        w.add(r, c, 1);
    }
    return w;
}

double partition_via_rank(const Graph& g, const RCParams& params, std::uint64_t budget) {
    const double p = params.p, q = params.q;
    if (p >= 1.0) return partition_enumerate(g, params);  // identity needs 1-p != 0
    RankPolynomial w = rank_polynomial(g, budget);
    double u = p / (q * (1.0 - p));
    double v = p / (1.0 - p);
    return std::pow(q, g.vertex_count()) * std::pow(1.0 - p, g.edge_count()) * w.evaluate(u, v);
}

}  // namespace rcm
