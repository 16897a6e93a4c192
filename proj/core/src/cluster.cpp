#include "rcm/cluster.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rcm {

void UnionFind::reset(int n) {
    parent_.resize(n);
    std::iota(parent_.begin(), parent_.end(), 0);
    size_.assign(n, 1);
    count_ = n;
}

bool UnionFind::merge(int a, int b) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return false;
    if (size_[ra] < size_[rb]) std::swap(ra, rb);
    parent_[rb] = ra;
    size_[ra] += size_[rb];
    --count_;
    return true;
}

ClusterDecomposition cluster_decompose(const Graph& g, const BondConfig& omega) {
    if (omega.edge_count() != g.edge_count())
        throw std::invalid_argument("cluster_decompose: configuration length mismatch");
    UnionFind uf(g.vertex_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!omega.open(e)) continue;
        const Edge& ed = g.edge(e);
        if (!ed.is_loop()) uf.merge(ed.u, ed.v);
    }
    ClusterDecomposition out;
    out.label.assign(g.vertex_count(), -1);
    // canonical labels: component of the smallest vertex gets label 0, etc.
    std::vector<int> root_label(g.vertex_count(), -1);
    int next = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        int r = uf.find(v);
        if (root_label[r] < 0) {
            root_label[r] = next++;
            out.sizes.push_back(0);
        }
        out.label[v] = root_label[r];
        out.sizes[root_label[r]] += 1;
    }
    out.k = next;
    return out;
}

int component_count(const Graph& g, const BondConfig& omega, UnionFind& scratch) {
    scratch.reset(g.vertex_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!omega.open(e)) continue;
        const Edge& ed = g.edge(e);
        if (!ed.is_loop()) scratch.merge(ed.u, ed.v);
    }
    return scratch.count();
}

int component_count_mask(const Graph& g, std::uint64_t mask, UnionFind& scratch) {
    scratch.reset(g.vertex_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!(mask >> e & 1)) continue;
        const Edge& ed = g.edge(e);
        if (!ed.is_loop()) scratch.merge(ed.u, ed.v);
    }
    return scratch.count();
}

}  // namespace rcm
