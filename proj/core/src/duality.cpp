#include "rcm/duality.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rcm/planar.hpp"

namespace rcm {

DualPair planar_dual(const Graph& g) {
    if (!g.has_embedding()) throw std::logic_error("planar_dual: missing embedding");
    // non-planar rotation systems fail the Euler identity on the all-open config
    BondConfig all_open(g.edge_count(), true);
    if (!euler_identity_check(g, all_open))
        throw std::invalid_argument("planar_dual: embedding fails Euler check (not planar)");

    FaceSet fs = trace_faces(g);
    const int face_count = static_cast<int>(fs.faces.size());

    std::vector<Edge> dual_edges(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        // e^d joins the faces on the two sides of e; same face makes a loop
        dual_edges[e] = {fs.face_of_dart[2 * e], fs.face_of_dart[2 * e + 1]};
    }
    Graph dual(face_count, std::move(dual_edges));

    // Dual rotation: around each face vertex, the crossings in face-walk
    // order.  Dual dart d sits at face_of_dart[d] by the edge construction
    // above, so the face orbits are literally the dual rotation lists.
    RotationSystem rot;
    rot.order = fs.faces;
    dual.set_embedding(std::move(rot));

    DualPair pair;
    pair.primal = g;
    pair.dual = std::move(dual);
    pair.edge_bijection.resize(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) pair.edge_bijection[e] = e;
    return pair;
}

BondConfig dual_config(const DualPair& pair, const BondConfig& omega) {
    if (omega.edge_count() != pair.primal.edge_count())
        throw std::invalid_argument("dual_config: configuration length mismatch");
    BondConfig dual(pair.dual.edge_count());
    for (int e = 0; e < omega.edge_count(); ++e)
        dual.set(pair.edge_bijection[e], !omega.open(e));
    return dual;
}

double dual_parameter(double p, double q) {
    if (p <= 0.0) return 1.0;  // closure convention so scans never fault
    return q * (1.0 - p) / (q * (1.0 - p) + p);
}

double self_dual_point(double q) {
    if (!(q > 0.0)) throw std::invalid_argument("self_dual_point: q must be positive");
    const double r = std::sqrt(q);
    return r / (1.0 + r);
}

bool duality_identity_check(const DualPair& pair, double p, double q, double tol, int cap_edges) {
    RCParams primal_params(p, q);
    RCParams dual_params(dual_parameter(p, q), q);
    ExactDistribution phi = exact_distribution(pair.primal, primal_params, cap_edges);
    ExactDistribution phi_d = exact_distribution(pair.dual, dual_params, cap_edges);
    const int m = pair.primal.edge_count();
    double worst = 0.0;
    for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
        BondConfig omega = BondConfig::from_mask(m, mask);
        std::uint64_t dual_mask = dual_config(pair, omega).to_mask();
        worst = std::max(worst, std::abs(phi.prob[mask] - phi_d.prob[dual_mask]));
    }
    return worst < tol;
}

double asymmetric_upper_bound(double q) {
    if (!(q > 1.0)) throw std::invalid_argument("asymmetric_upper_bound: requires q > 1");
    const double r = std::sqrt(q);
    return r / (std::sqrt(1.0 - 1.0 / q) + r);
}

std::string to_dual_pair_text(const DualPair& pair) {
    std::ostringstream os;
    os << "primal\n" << to_edge_list(pair.primal);
    os << "dual\n" << to_edge_list(pair.dual);
    os << "bijection\n";
    for (std::size_t e = 0; e < pair.edge_bijection.size(); ++e)
        os << e << " -> " << pair.edge_bijection[e] << '\n';
    return os.str();
}

}  // namespace rcm
