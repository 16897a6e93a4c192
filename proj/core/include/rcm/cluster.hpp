#ifndef RCM_CLUSTER_HPP
#define RCM_CLUSTER_HPP

#include <vector>

#include "rcm/bond_config.hpp"
#include "rcm/graph.hpp"

namespace rcm {

// Union-find with path compression and union by size.
class UnionFind {
  public:
    explicit UnionFind(int n) { reset(n); }
    void reset(int n);
    int find(int x) {
        int root = x;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[x] != root) {
            int next = parent_[x];
            parent_[x] = root;
            x = next;
        }
        return root;
    }
    // True if the sets were distinct.
    bool merge(int a, int b);
    bool connected(int a, int b) { return find(a) == find(b); }
    int count() const { return count_; }

  private:
    std::vector<int> parent_;
    std::vector<int> size_;
    int count_ = 0;
};

struct ClusterDecomposition {
    std::vector<int> label;   // dense 0..k-1, canonical: ordered by smallest member
    std::vector<int> sizes;   // per component
    int k = 0;                // includes isolated vertices
};

// Components of the open subgraph (V, η(ω)).
ClusterDecomposition cluster_decompose(const Graph& g, const BondConfig& omega);

// k(ω) only, via a caller-provided scratch UnionFind (hot path for samplers
// and enumeration).
int component_count(const Graph& g, const BondConfig& omega, UnionFind& scratch);

// k(ω) for a mask configuration (enumeration hot path, |E| <= 64).
int component_count_mask(const Graph& g, std::uint64_t mask, UnionFind& scratch);

}  // namespace rcm

#endif
