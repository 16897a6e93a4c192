#include "rcm/planar.hpp"

#include <stdexcept>

#include "rcm/cluster.hpp"

namespace rcm {

namespace {

// Face tracing over a subset of darts.  `next_in_rotation[d]` is the dart
// after d in the rotation at d's vertex (restricted to present darts).
// Walking dart d from its vertex to the far end, the face turn continues
// with the rotation successor of the opposite dart.
int trace(const std::vector<Dart>& all_darts, const std::vector<Dart>& next_in_rotation,
          std::vector<int>* face_of_dart, std::vector<std::vector<Dart>>* faces) {
    int count = 0;
    for (Dart start : all_darts) {
        if ((*face_of_dart)[start] >= 0) continue;
        std::vector<Dart> walk;
        Dart d = start;
        do {
            (*face_of_dart)[d] = count;
            walk.push_back(d);
            d = next_in_rotation[dart_opposite(d)];
        } while (d != start);
        if (faces) faces->push_back(std::move(walk));
        ++count;
    }
    return count;
}

std::vector<Dart> rotation_successors(const Graph& g, const BondConfig* omega) {
    const RotationSystem& rot = g.embedding();
    std::vector<Dart> next(2 * g.edge_count(), -1);
    for (int v = 0; v < g.vertex_count(); ++v) {
        std::vector<Dart> present;
        for (Dart d : rot.order[v])
            if (!omega || omega->open(dart_edge(d))) present.push_back(d);
        const int m = static_cast<int>(present.size());
        for (int i = 0; i < m; ++i) next[present[i]] = present[(i + 1) % m];
    }
    return next;
}

}  // namespace

FaceSet trace_faces(const Graph& g) {
    FaceSet fs;
    fs.face_of_dart.assign(2 * g.edge_count(), -1);
    std::vector<Dart> all;
    all.reserve(2 * g.edge_count());
    for (Dart d = 0; d < 2 * g.edge_count(); ++d) all.push_back(d);
    auto next = rotation_successors(g, nullptr);
    trace(all, next, &fs.face_of_dart, &fs.faces);
    return fs;
}

int face_count(const Graph& g, const BondConfig& omega) {
    if (!g.has_embedding()) throw std::logic_error("face_count: missing embedding");
    if (omega.edge_count() != g.edge_count())
        throw std::invalid_argument("face_count: configuration length mismatch");

    std::vector<Dart> open_darts;
    for (Dart d = 0; d < 2 * g.edge_count(); ++d)
        if (omega.open(dart_edge(d))) open_darts.push_back(d);
    if (open_darts.empty()) return 1;  // only the infinite face

    auto next = rotation_successors(g, &omega);
    std::vector<int> face_of(2 * g.edge_count(), -1);
    int orbits = trace(open_darts, next, &face_of, nullptr);

    // Orbits count one unbounded walk per edge-bearing component; in the
    // plane those walks all border the single infinite face.
    UnionFind uf(g.vertex_count());
    int edge_components = 0;
    {
        for (int e = 0; e < g.edge_count(); ++e) {
            if (!omega.open(e)) continue;
            const Edge& ed = g.edge(e);
            if (!ed.is_loop()) uf.merge(ed.u, ed.v);
        }
        std::vector<char> seen(g.vertex_count(), 0);
        for (int e = 0; e < g.edge_count(); ++e) {
            if (!omega.open(e)) continue;
            int r = uf.find(g.edge(e).u);
            if (!seen[r]) {
                seen[r] = 1;
                ++edge_components;
            }
        }
    }
    return orbits - edge_components + 1;
}

bool euler_identity_check(const Graph& g, const BondConfig& omega) {
    UnionFind uf(g.vertex_count());
    int k = component_count(g, omega, uf);
    int f = face_count(g, omega);
    return k == g.vertex_count() - omega.open_count() + f - 1;
}

}  // namespace rcm
