#include "doctest.h"

#include <stdexcept>

#include "rcm/planar.hpp"
#include "suite.hpp"

using namespace rcm;

TEST_CASE("face counts on small embedded graphs") {
    Graph tri = build_triangle();
    CHECK(face_count(tri, BondConfig(3, true)) == 2);   // inside + outside
    CHECK(face_count(tri, BondConfig(3, false)) == 1);  // only the infinite face

    Graph c4 = build_cycle(4);
    CHECK(face_count(c4, BondConfig(4, true)) == 2);

    Graph box = build_box_lattice(2, {3, 3}, BoundarySpec{});
    CHECK(face_count(box, BondConfig(12, true)) == 5);  // 4 unit squares + infinite

    Graph tree = build_regular_tree(2, 2);
    CHECK(face_count(tree, BondConfig(tree.edge_count(), true)) == 1);

    Graph no_embedding = build_complete_graph(3);
    CHECK_THROWS_AS(face_count(no_embedding, BondConfig(3, true)), std::logic_error);
}

TEST_CASE("euler identity, exhaustive over embedded graphs <= 12 edges") {
    for (auto& [name, g] : suite::embedded_graphs()) {
        if (g.edge_count() > 12) continue;
        CAPTURE(name);
        for (std::uint64_t mask = 0; mask < (1ull << g.edge_count()); ++mask)
            REQUIRE(euler_identity_check(g, BondConfig::from_mask(g.edge_count(), mask)));
    }
}

TEST_CASE("euler identity spot values") {
    Graph tri = build_triangle();
    // all closed: 3 = 3 - 0 + 1 - 1; all open: 1 = 3 - 3 + 2 - 1
    CHECK(euler_identity_check(tri, BondConfig(3, false)));
    CHECK(euler_identity_check(tri, BondConfig(3, true)));
}
