#include "rcm/graph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "rcm/io.hpp"

namespace rcm {

Graph::Graph(int vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
    if (vertex_count_ < 0) throw std::invalid_argument("Graph: negative vertex count");
    for (const Edge& e : edges_) {
        if (e.u < 0 || e.u >= vertex_count_ || e.v < 0 || e.v >= vertex_count_)
            throw std::invalid_argument("Graph: endpoint index out of range");
    }
}

const RotationSystem& Graph::embedding() const {
    if (!embedding_) throw std::logic_error("Graph: no embedding present");
    return *embedding_;
}

void Graph::set_embedding(RotationSystem rot) {
    if (static_cast<int>(rot.order.size()) != vertex_count_)
        throw std::invalid_argument("embedding: one rotation list per vertex required");
    std::vector<int> seen(2 * edges_.size(), 0);
    for (int v = 0; v < vertex_count_; ++v) {
        for (Dart d : rot.order[v]) {
            if (d < 0 || d >= static_cast<Dart>(2 * edges_.size()))
                throw std::invalid_argument("embedding: dart out of range");
            if (vertex_of_dart(d) != v)
                throw std::invalid_argument("embedding: dart listed at wrong vertex");
            seen[d] += 1;
        }
    }
    for (int c : seen)
        if (c != 1) throw std::invalid_argument("embedding: every edge end must appear exactly once");
    embedding_ = std::move(rot);
}

std::uint64_t Graph::hash() const {
    std::ostringstream os;
    os << vertex_count_ << ';';
    for (const Edge& e : edges_) os << e.u << ',' << e.v << ';';
    return fnv1a(os.str());
}

namespace {

// Rotation from an incidence scan: darts at each vertex in edge order.
// Valid as a plane embedding for trees and for graphs whose construction
// orders incidences planarly (cycle, box via explicit rotations below).
RotationSystem incidence_rotation(int n, const std::vector<Edge>& edges) {
    RotationSystem rot;
    rot.order.assign(n, {});
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        rot.order[edges[e].u].push_back(2 * e);
        rot.order[edges[e].v].push_back(2 * e + 1);
    }
    return rot;
}

}  // namespace

Graph build_box_lattice(int d, const std::vector<int>& side_lengths,
                        const BoundarySpec& boundary) {
    if (d < 1) throw std::invalid_argument("build_box_lattice: dimension must be >= 1");
    if (static_cast<int>(side_lengths.size()) != d)
        throw std::invalid_argument("build_box_lattice: need one side length per dimension");
    long long n = 1;
    for (int s : side_lengths) {
        if (s < 1) throw std::invalid_argument("build_box_lattice: zero side length");
        n *= s;
    }

    std::vector<long long> stride(d);
    stride[0] = 1;
    for (int i = 1; i < d; ++i) stride[i] = stride[i - 1] * side_lengths[i - 1];
    auto coord = [&](long long v, int axis) { return static_cast<int>(v / stride[axis] % side_lengths[axis]); };

    const bool periodic = boundary.kind == BoundaryKind::periodic;
    std::vector<Edge> edges;
    for (long long v = 0; v < n; ++v) {
        for (int axis = 0; axis < d; ++axis) {
            int c = coord(v, axis);
            if (c + 1 < side_lengths[axis]) {
                edges.push_back({static_cast<int>(v), static_cast<int>(v + stride[axis])});
            } else if (periodic && side_lengths[axis] > 2) {
                // wrap; side 2 would duplicate the existing edge, side 1 a loop
                edges.push_back({static_cast<int>(v), static_cast<int>(v - (side_lengths[axis] - 1) * stride[axis])});
            }
        }
    }

    std::vector<std::vector<int>> coords(n, std::vector<int>(d));
    for (long long v = 0; v < n; ++v)
        for (int axis = 0; axis < d; ++axis) coords[v][axis] = coord(v, axis);

    std::vector<int> bnd;
    for (long long v = 0; v < n; ++v) {
        for (int axis = 0; axis < d; ++axis) {
            int c = coord(v, axis);
            if (c == 0 || c == side_lengths[axis] - 1) {
                bnd.push_back(static_cast<int>(v));
                break;
            }
        }
    }

    // center vertex (floor midpoint per axis)
    long long center = 0;
    for (int axis = 0; axis < d; ++axis) center += (side_lengths[axis] - 1) / 2 * stride[axis];

    if (boundary.kind == BoundaryKind::wired) {
        if (bnd.empty()) throw std::invalid_argument("wired box: boundary is empty");
        // interior vertices keep relative order; super-vertex gets the last id
        std::vector<int> remap(n, -1);
        std::vector<char> is_bnd(n, 0);
        for (int v : bnd) is_bnd[v] = 1;
        int next = 0;
        for (long long v = 0; v < n; ++v)
            if (!is_bnd[v]) remap[v] = next++;
        const int super = next;
        for (long long v = 0; v < n; ++v)
            if (is_bnd[v]) remap[v] = super;
        std::vector<Edge> wired_edges;
        wired_edges.reserve(edges.size());
        for (const Edge& e : edges) wired_edges.push_back({remap[e.u], remap[e.v]});
        Graph g(super + 1, std::move(wired_edges));
        g.set_boundary_vertices({super});
        std::vector<std::vector<int>> wc(super + 1);
        for (long long v = 0; v < n; ++v)
            if (!is_bnd[v]) wc[remap[v]] = coords[v];
        g.set_coords(std::move(wc));
        g.set_origin_vertex(is_bnd[center] ? super : remap[center]);
        return g;
    }

    Graph g(static_cast<int>(n), std::move(edges));
    g.set_boundary_vertices(std::move(bnd));
    g.set_coords(std::move(coords));
    g.set_origin_vertex(static_cast<int>(center));

    if (d == 2 && boundary.kind == BoundaryKind::free) {
        // counterclockwise rotations: +x, +y, -x, -y
        const int W = side_lengths[0], H = side_lengths[1];
        std::vector<std::vector<Dart>> rot(n);
        // edge order above: for each v ascending, +x edge then +y edge
        std::vector<std::vector<Dart>> dir(n, std::vector<Dart>(4, -1));  // E,N,W,S
        int eid = 0;
        for (int v = 0; v < static_cast<int>(n); ++v) {
            int x = v % W, y = v / W;
            if (x + 1 < W) {
                dir[v][0] = 2 * eid;
                dir[v + 1][2] = 2 * eid + 1;
                ++eid;
            }
            if (y + 1 < H) {
                dir[v][1] = 2 * eid;
                dir[v + W][3] = 2 * eid + 1;
                ++eid;
            }
        }
        for (int v = 0; v < static_cast<int>(n); ++v)
            for (int k = 0; k < 4; ++k)
                if (dir[v][k] >= 0) rot[v].push_back(dir[v][k]);
        RotationSystem rs;
        rs.order = std::move(rot);
        g.set_embedding(std::move(rs));
    }
    return g;
}

Graph build_complete_graph(int n) {
    if (n < 1) throw std::invalid_argument("build_complete_graph: n must be >= 1");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
    return Graph(n, std::move(edges));
}

Graph build_regular_tree(int branching, int depth) {
    if (branching < 1) throw std::invalid_argument("build_regular_tree: branching must be >= 1");
    if (depth < 0) throw std::invalid_argument("build_regular_tree: negative depth");
    std::vector<Edge> edges;
    int next = 1;
    std::vector<int> frontier{0};
    for (int level = 0; level < depth; ++level) {
        std::vector<int> children;
        for (int v : frontier) {
            for (int c = 0; c < branching; ++c) {
                edges.push_back({v, next});
                children.push_back(next);
                ++next;
            }
        }
        frontier = std::move(children);
    }
    Graph g(next, std::move(edges));
    g.set_embedding(incidence_rotation(g.vertex_count(), g.edges()));  // trees: any rotation is plane
    return g;
}

Graph build_cycle(int n) {
    if (n < 3) throw std::invalid_argument("build_cycle: need n >= 3");
    std::vector<Edge> edges;
    for (int v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n});
    Graph g(n, std::move(edges));
    g.set_embedding(incidence_rotation(g.vertex_count(), g.edges()));
    return g;
}

Graph build_single_edge() {
    Graph g(2, {{0, 1}});
    g.set_embedding(incidence_rotation(2, g.edges()));
    return g;
}

Graph build_triangle() { return build_cycle(3); }

std::string to_edge_list(const Graph& g) {
    std::ostringstream os;
    os << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << '\n';
    if (g.has_embedding()) {
        os << "embedding\n";
        for (int v = 0; v < g.vertex_count(); ++v) {
            os << v << ':';
            for (Dart d : g.embedding().order[v]) os << ' ' << dart_edge(d) << ':' << (d & 1);
            os << '\n';
        }
    }
    return os.str();
}

Graph from_edge_list(const std::string& text) {
    std::istringstream is(text);
    int n = -1, m = -1;
    if (!(is >> n >> m)) throw std::invalid_argument("edge list: bad header");
    std::vector<Edge> edges(m);
    for (int e = 0; e < m; ++e)
        if (!(is >> edges[e].u >> edges[e].v)) throw std::invalid_argument("edge list: truncated");
    Graph g(n, std::move(edges));
    std::string word;
    if (is >> word) {
        if (word != "embedding") throw std::invalid_argument("edge list: unexpected trailing data");
        RotationSystem rot;
        rot.order.assign(n, {});
        std::string line;
        std::getline(is, line);  // rest of the 'embedding' line
        for (int v = 0; v < n; ++v) {
            if (!std::getline(is, line)) throw std::invalid_argument("edge list: truncated embedding");
            std::istringstream ls(line);
            std::string head;
            ls >> head;
            if (head != std::to_string(v) + ":")
                throw std::invalid_argument("edge list: bad rotation line");
            std::string tok;
            while (ls >> tok) {
                auto colon = tok.find(':');
                if (colon == std::string::npos)
                    throw std::invalid_argument("edge list: bad dart token");
                int e = std::stoi(tok.substr(0, colon));
                int end = std::stoi(tok.substr(colon + 1));
                rot.order[v].push_back(2 * e + end);
            }
        }
        g.set_embedding(std::move(rot));
    }
    return g;
}

}  // namespace rcm
