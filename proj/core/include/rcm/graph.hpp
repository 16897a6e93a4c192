#ifndef RCM_GRAPH_HPP
#define RCM_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rcm {

// A dart is one end of an edge: dart 2*e is the end at edge e's first
// endpoint, dart 2*e+1 the end at its second. Loops contribute two darts
// at the same vertex.
using Dart = std::int32_t;

inline int dart_edge(Dart d) { return d >> 1; }
inline Dart dart_opposite(Dart d) { return d ^ 1; }

struct Edge {
    int u = 0;
    int v = 0;
    bool is_loop() const { return u == v; }
};

// Rotation system: for each vertex, the cyclic order of incident darts.
// Present only for graphs built with a planar embedding.
struct RotationSystem {
    std::vector<std::vector<Dart>> order;  // one list per vertex
};

enum class BoundaryKind { free, wired, periodic };

struct BoundarySpec {
    BoundaryKind kind = BoundaryKind::free;
};

// Immutable after construction; parallel edges and loops permitted.
class Graph {
  public:
    Graph() = default;
    Graph(int vertex_count, std::vector<Edge> edges);

    int vertex_count() const { return vertex_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int e) const { return edges_[e]; }

    bool has_embedding() const { return embedding_.has_value(); }
    const RotationSystem& embedding() const;
    void set_embedding(RotationSystem rot);  // validated: every dart once, at its endpoint

    const std::vector<int>& boundary_vertices() const { return boundary_; }
    void set_boundary_vertices(std::vector<int> b) { boundary_ = std::move(b); }

    // Lattice builders record integer coordinates (used for cluster radii).
    bool has_coords() const { return !coords_.empty(); }
    const std::vector<std::vector<int>>& coords() const { return coords_; }
    void set_coords(std::vector<std::vector<int>> c) { coords_ = std::move(c); }

    // Distinguished vertex for point-to-boundary observables (lattice center).
    int origin_vertex() const { return origin_; }
    void set_origin_vertex(int v) { origin_ = v; }

    int vertex_of_dart(Dart d) const {
        const Edge& e = edges_[dart_edge(d)];
        return (d & 1) ? e.v : e.u;
    }

    // FNV-1a over the canonical edge list; used to tag oracle outputs.
    std::uint64_t hash() const;

  private:
    int vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::optional<RotationSystem> embedding_;
    std::vector<int> boundary_;
    std::vector<std::vector<int>> coords_;
    int origin_ = 0;
};

// d-dimensional box with the given side lengths (vertex counts per axis).
// free: plain nearest-neighbour box. wired: all boundary vertices merged
// into one super-vertex (parallel edges and loops retained), boundary set
// = {super}. periodic: opposite faces identified (demos only).
// 2-dimensional free boxes carry a planar rotation system.
Graph build_box_lattice(int d, const std::vector<int>& side_lengths,
                        const BoundarySpec& boundary);

Graph build_complete_graph(int n);

// Rooted tree: every vertex at depth < `depth` has `branching` children.
Graph build_regular_tree(int branching, int depth);

// Cycle on n vertices with its convex-polygon embedding.
Graph build_cycle(int n);

// Single edge / handy micro-graphs used all over the tests and CLI.
Graph build_single_edge();
Graph build_triangle();  // embedded

// Edge-list text format: header "V E", then E lines "u v", then an
// optional embedding block ("embedding" line followed by V rotation
// lines "v: e:end e:end ...").  Round-trips bit-exactly.
std::string to_edge_list(const Graph& g);
Graph from_edge_list(const std::string& text);

}  // namespace rcm

#endif
