#ifndef RCM_PLANAR_HPP
#define RCM_PLANAR_HPP

#include <vector>

#include "rcm/bond_config.hpp"
#include "rcm/graph.hpp"

namespace rcm {

// Faces of the full graph, traced from the rotation system.  Each face is
// the cyclic list of darts met walking it (dart d is traversed from
// vertex_of_dart(d) towards the opposite end).
struct FaceSet {
    std::vector<std::vector<Dart>> faces;
    std::vector<int> face_of_dart;  // size 2|E|
};

FaceSet trace_faces(const Graph& g);

// Number of faces of the open subgraph (V, η(ω)), including the infinite
// face.  Closed edges are removed, the rotation order of the remaining
// darts is preserved.  All-closed ω has one face.
int face_count(const Graph& g, const BondConfig& omega);

// k(ω) == |V| - |η(ω)| + f(ω) - 1, checked exactly.  Fails for rotation
// systems that are not plane embeddings.
bool euler_identity_check(const Graph& g, const BondConfig& omega);

}  // namespace rcm

#endif
