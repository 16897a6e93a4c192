#ifndef RCM_ESTIMATORS_HPP
#define RCM_ESTIMATORS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rcm/graph.hpp"
#include "rcm/params.hpp"
#include "rcm/samplers.hpp"

namespace rcm {

struct BatchMeans {
    double mean = 0.0;
    double se = 0.0;
};
BatchMeans batch_means(const std::vector<double>& xs, int batches = 32);

struct EstimatorReport {
    std::string quantity;
    double value = 0.0;
    double se = 0.0;
    long long samples = 0;
    std::uint64_t seed = 0;
    double p = 0.0, q = 0.0;
    std::string sampler;
    std::string to_csv_row() const;
    std::string to_json() const;
};

// How estimator samples are produced.  CFTP samples are i.i.d.; heat-bath
// samples are taken every `thin_sweeps` sweeps after `burn_in_sweeps`.
struct SamplerOptions {
    bool use_cftp = true;
    int burn_in_sweeps = 200;
    int thin_sweeps = 4;
    int workers = 1;
};

// φ^b_{B(n)}(0 ↔ ∂B(n)) on the 2d box of radius n (side 2n+1); b = 1 means
// wired (boundary identified).
EstimatorReport theta_box_estimate(int n, int b, const RCParams& params, long long samples,
                                   std::uint64_t seed, const SamplerOptions& opt = {});

EstimatorReport two_point_estimate(const Graph& g, const RCParams& params, int x, int y,
                                   long long samples, std::uint64_t seed,
                                   const SamplerOptions& opt = {});

EstimatorReport edge_density_estimate(const Graph& g, const RCParams& params, long long samples,
                                      std::uint64_t seed, const SamplerOptions& opt = {});

// Histograms of |C(origin)| and rad(C(origin)); radius in the L1 norm of
// the stored lattice coordinates.
struct ClusterStatistics {
    std::map<int, long long> size_histogram;
    std::map<int, long long> radius_histogram;
    long long samples = 0;
    std::string to_csv() const;
};
ClusterStatistics cluster_statistics(const Graph& g, const RCParams& params, long long samples,
                                     std::uint64_t seed, const SamplerOptions& opt = {});

// Grid scan: one row per (p, box size) with edge density, the
// point-to-boundary proxy and the largest-cluster fraction, wired and free
// noted by the caller via `b`.  Annotation lines carry the self-dual point
// and the asymmetric upper bound.
struct ScanRow {
    double p = 0.0;
    int box = 0;
    int b = 0;
    double edge_density = 0.0, edge_density_se = 0.0;
    double theta_proxy = 0.0, theta_proxy_se = 0.0;
    double giant_fraction = 0.0, giant_fraction_se = 0.0;
};
struct ScanResult {
    double q = 0.0;
    std::vector<ScanRow> rows;
    double self_dual = 0.0;
    double upper_bound = 0.0;  // NaN for q <= 1
    std::string to_csv() const;
};
ScanResult critical_scan(double q, const std::vector<double>& p_grid,
                         const std::vector<int>& box_sizes, int b, long long samples,
                         std::uint64_t seed, const SamplerOptions& opt = {});

}  // namespace rcm

#endif
