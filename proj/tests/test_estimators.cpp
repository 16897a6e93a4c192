#include "doctest.h"

#include <stdexcept>

#include <cmath>

#include "rcm/duality.hpp"
#include "rcm/estimators.hpp"
#include "rcm/exact.hpp"
#include "rcm/meanfield.hpp"

using namespace rcm;

TEST_CASE("batch means") {
    std::vector<double> xs(3200);
    CounterRng rng(1, 1);
    for (auto& x : xs) x = rng.next_unit();
    BatchMeans bm = batch_means(xs);
    CHECK(std::abs(bm.mean - 0.5) < 0.02);
    CHECK(bm.se > 0.0);
    CHECK(bm.se < 0.02);

    BatchMeans tiny = batch_means({1.0, 2.0, 3.0});
    CHECK(tiny.mean == doctest::Approx(2.0));
    CHECK(batch_means({}).mean == 0.0);
}

TEST_CASE("two point estimate vs exact oracle (cftp, single edge and small box)") {
    Graph e = build_single_edge();
    RCParams params(0.5, 2.0);
    SamplerOptions opt;
    opt.use_cftp = true;
    EstimatorReport rep = two_point_estimate(e, params, 0, 1, 40000, 2025, opt);
    // exact 1/3; joint three-sigma criterion
    double sigma = std::sqrt((1.0 / 3) * (2.0 / 3) / 40000.0);
    CHECK(std::abs(rep.value - 1.0 / 3.0) < 3.0 * std::max(rep.se, sigma));

    // x = y is certain
    EstimatorReport same = two_point_estimate(e, params, 0, 0, 100, 1, opt);
    CHECK(same.value == doctest::Approx(1.0));

    Graph box = build_box_lattice(2, {2, 2}, BoundarySpec{});
    UnionFind uf(box.vertex_count());
    double exact = event_probability(box, params, [&](const BondConfig& w) {
        uf.reset(box.vertex_count());
        for (int i = 0; i < box.edge_count(); ++i)
            if (w.open(i)) uf.merge(box.edge(i).u, box.edge(i).v);
        return uf.connected(0, 3);
    });
    EstimatorReport rep2 = two_point_estimate(box, params, 0, 3, 40000, 4, opt);
    CHECK(std::abs(rep2.value - exact) < 3.0 * std::max(rep2.se, 0.004));
}

TEST_CASE("edge density estimate: q=1 equals p; single-edge q=2 equals 1/3") {
    Graph box = build_box_lattice(2, {3, 3}, BoundarySpec{});
    SamplerOptions opt;
    opt.use_cftp = true;
    EstimatorReport q1 = edge_density_estimate(box, RCParams(0.45, 1.0), 20000, 9, opt);
    CHECK(std::abs(q1.value - 0.45) < 3.0 * std::max(q1.se, 0.002));

    EstimatorReport e2 =
        edge_density_estimate(build_single_edge(), RCParams(0.5, 2.0), 40000, 10, opt);
    CHECK(std::abs(e2.value - 1.0 / 3.0) < 3.0 * std::max(e2.se, 0.004));
}

TEST_CASE("edge density is nondecreasing in p along a scan (MC resolution)") {
    SamplerOptions opt;
    opt.use_cftp = true;
    ScanResult scan = critical_scan(2.0, {0.2, 0.4, 0.6, 0.8}, {2}, 0, 4000, 77, opt);
    REQUIRE(scan.rows.size() == 4);
    for (std::size_t i = 1; i < scan.rows.size(); ++i) {
        double gap = scan.rows[i].edge_density - scan.rows[i - 1].edge_density;
        double se = 3.0 * std::hypot(scan.rows[i].edge_density_se,
                                     scan.rows[i - 1].edge_density_se);
        CHECK(gap > -se);
    }
    CHECK(scan.self_dual == doctest::Approx(self_dual_point(2.0)));
    std::string csv = scan.to_csv();
    CHECK(csv.find("# self_dual_point=") != std::string::npos);
    CHECK(csv.find("# asymmetric_upper_bound=") != std::string::npos);
}

TEST_CASE("theta box estimate endpoints") {
    SamplerOptions opt;
    opt.use_cftp = true;
    // p extreme values short-circuit inside critical_scan; for theta use near-extremes
    EstimatorReport hi = theta_box_estimate(2, 0, RCParams(0.995, 1.0), 400, 5, opt);
    CHECK(hi.value > 0.9);
    EstimatorReport lo = theta_box_estimate(2, 0, RCParams(0.005, 1.0), 400, 6, opt);
    CHECK(lo.value < 0.1);
    CHECK(hi.quantity == "theta_proxy_free");
    EstimatorReport wired = theta_box_estimate(1, 1, RCParams(0.6, 2.0), 200, 7, opt);
    CHECK(wired.quantity == "theta_proxy_wired");
}

TEST_CASE("theta box estimate agrees with the independent-bond oracle at q=1") {
    // q = 1, 7x7 free box: independent percolation sampler is the oracle
    const int n = 3;
    RCParams params(0.5, 1.0);
    SamplerOptions opt;
    opt.use_cftp = true;
    opt.workers = 2;
    EstimatorReport rep = theta_box_estimate(n, 0, params, 20000, 1717, opt);

    Graph box = build_box_lattice(2, {2 * n + 1, 2 * n + 1}, BoundarySpec{});
    CounterRng rng(99, 99);
    UnionFind uf(box.vertex_count());
    const int trials = 40000;
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
        uf.reset(box.vertex_count());
        for (int e = 0; e < box.edge_count(); ++e)
            if (rng.next_unit() < params.p) uf.merge(box.edge(e).u, box.edge(e).v);
        bool conn = false;
        for (int b : box.boundary_vertices())
            if (uf.find(b) == uf.find(box.origin_vertex())) {
                conn = true;
                break;
            }
        hits += conn;
    }
    double oracle_mean = static_cast<double>(hits) / trials;
    double oracle_se = std::sqrt(oracle_mean * (1 - oracle_mean) / trials);
    CHECK(std::abs(rep.value - oracle_mean) < 3.0 * std::hypot(rep.se, oracle_se));
}

TEST_CASE("cluster statistics histograms") {
    SamplerOptions opt;
    opt.use_cftp = true;
    Graph box = build_box_lattice(2, {3, 3}, BoundarySpec{});
    ClusterStatistics cs = cluster_statistics(box, RCParams(0.5, 1.0), 2000, 3, opt);
    long long total = 0;
    for (auto& [size, count] : cs.size_histogram) total += count;
    CHECK(total == 2000);
    CHECK(cs.radius_histogram.begin()->first >= 0);
    std::string csv = cs.to_csv();
    CHECK(csv.rfind("kind,value,count\n", 0) == 0);
}

TEST_CASE("reports are reproducible bit-exactly from the seed") {
    SamplerOptions opt;
    opt.use_cftp = true;
    EstimatorReport a = edge_density_estimate(build_triangle(), RCParams(0.4, 2.0), 5000, 42, opt);
    EstimatorReport b = edge_density_estimate(build_triangle(), RCParams(0.4, 2.0), 5000, 42, opt);
    CHECK(a.to_csv_row() == b.to_csv_row());
    CHECK(a.to_json() == b.to_json());

    // worker split does not change CFTP results
    SamplerOptions opt4 = opt;
    opt4.workers = 4;
    EstimatorReport c =
        edge_density_estimate(build_triangle(), RCParams(0.4, 2.0), 5000, 42, opt4);
    CHECK(a.value == c.value);
}

TEST_CASE("automated sweep: estimators vs exact oracle on enumerable graphs") {
    SamplerOptions opt;
    opt.use_cftp = true;
    std::vector<Graph> graphs{build_triangle(), build_box_lattice(2, {2, 2}, BoundarySpec{})};
    for (const Graph& g : graphs) {
        for (auto [p, q] : {std::pair{0.4, 1.5}, std::pair{0.6, 2.0}}) {
            RCParams params(p, q);
            // exact edge density: mean open fraction under the measure
            ExactDistribution d = exact_distribution(g, params);
            double exact_h = 0.0, exact_conn = 0.0;
            UnionFind uf(g.vertex_count());
            for (std::uint64_t m = 0; m < d.prob.size(); ++m) {
                exact_h += d.prob[m] * __builtin_popcountll(m) / double(g.edge_count());
                uf.reset(g.vertex_count());
                for (int e = 0; e < g.edge_count(); ++e)
                    if (m >> e & 1) uf.merge(g.edge(e).u, g.edge(e).v);
                if (uf.connected(0, g.vertex_count() - 1)) exact_conn += d.prob[m];
            }
            EstimatorReport h = edge_density_estimate(g, params, 20000, 404, opt);
            CHECK(std::abs(h.value - exact_h) < 3.0 * std::max(h.se, 0.004));
            EstimatorReport c =
                two_point_estimate(g, params, 0, g.vertex_count() - 1, 20000, 405, opt);
            CHECK(std::abs(c.value - exact_conn) < 3.0 * std::max(c.se, 0.004));
        }
    }
}

TEST_CASE("theta proxy is nondecreasing in p along a scan (MC resolution, q >= 1)") {
    SamplerOptions opt;
    opt.use_cftp = true;
    ScanResult scan = critical_scan(1.5, {0.3, 0.5, 0.7}, {2}, 0, 4000, 606, opt);
    for (std::size_t i = 1; i < scan.rows.size(); ++i) {
        double gap = scan.rows[i].theta_proxy - scan.rows[i - 1].theta_proxy;
        double se =
            3.0 * std::hypot(scan.rows[i].theta_proxy_se, scan.rows[i - 1].theta_proxy_se);
        CHECK(gap > -se);
    }
}

TEST_CASE("theta proxy on the radius-1 box matches enumeration (q = 2, both boundaries)") {
    SamplerOptions opt;
    opt.use_cftp = true;
    RCParams params(0.6, 2.0);
    for (int b : {0, 1}) {
        Graph box = build_box_lattice(2, {3, 3},
                                      BoundarySpec{b ? BoundaryKind::wired : BoundaryKind::free});
        UnionFind uf(box.vertex_count());
        double exact = event_probability(box, params, [&](const BondConfig& w) {
            uf.reset(box.vertex_count());
            for (int e = 0; e < box.edge_count(); ++e)
                if (w.open(e) && !box.edge(e).is_loop()) uf.merge(box.edge(e).u, box.edge(e).v);
            for (int bd : box.boundary_vertices())
                if (uf.connected(bd, box.origin_vertex())) return true;
            return false;
        });
        EstimatorReport rep = theta_box_estimate(1, b, params, 20000, 515 + b, opt);
        CHECK(std::abs(rep.value - exact) < 3.0 * std::max(rep.se, 0.005));
    }
}

TEST_CASE("critical scan on the wired side emits rows") {
    SamplerOptions opt;
    opt.use_cftp = false;
    opt.burn_in_sweeps = 30;
    opt.thin_sweeps = 2;
    ScanResult scan = critical_scan(2.0, {0.5}, {1}, 1, 200, 808, opt);
    REQUIRE(scan.rows.size() == 1);
    CHECK(scan.rows[0].b == 1);
    CHECK(scan.rows[0].theta_proxy >= 0.0);
    CHECK(scan.rows[0].theta_proxy <= 1.0);
}

TEST_CASE("scan CSV bytes are identical for identical seed and config") {
    SamplerOptions opt;
    opt.use_cftp = true;
    ScanResult a = critical_scan(1.5, {0.4, 0.6}, {1}, 0, 500, 909, opt);
    ScanResult b = critical_scan(1.5, {0.4, 0.6}, {1}, 0, 500, 909, opt);
    CHECK(a.to_csv() == b.to_csv());
}
