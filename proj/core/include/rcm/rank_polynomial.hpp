#ifndef RCM_RANK_POLYNOMIAL_HPP
#define RCM_RANK_POLYNOMIAL_HPP

#include <cstdint>
#include <vector>

#include "rcm/graph.hpp"
#include "rcm/params.hpp"

namespace rcm {

// W_G(u,v) = Σ_{E'⊆E} u^{r(G')} v^{c(G')} with r = |V|-k and c = |E'|-|V|+k.
// Coefficients are subset counts; total mass is exactly 2^|E|.
class RankPolynomial {
  public:
    RankPolynomial() : coeff_(1, std::vector<std::uint64_t>(1, 0)) {}

    std::uint64_t coeff(int r, int c) const;
    void add(int r, int c, std::uint64_t count);
    int max_rank() const { return static_cast<int>(coeff_.size()) - 1; }
    int max_corank() const;

    std::uint64_t total_mass() const;
    double evaluate(double u, double v) const;

    // W += other, with exponents shifted by (dr, dc).
    void accumulate(const RankPolynomial& other, int dr, int dc);
    // W *= (1+u)^a (1+v)^b.
    void multiply_bridge_loop(int bridges, int loops);

    bool operator==(const RankPolynomial& o) const;

  private:
    std::vector<std::vector<std::uint64_t>> coeff_;  // [r][c]
};

// Deletion-contraction: split on a non-loop non-bridge edge when one
// exists, otherwise close the remaining bridges/loops in one step.
// `budget` caps the number of recursion nodes.
RankPolynomial rank_polynomial(const Graph& g, std::uint64_t budget = 1u << 22);

// Direct 2^|E| enumeration (cap as for partition enumeration); the
// independent second route used by tests.
RankPolynomial rank_polynomial_enumerate(const Graph& g, int cap_edges = 24);

// Z = q^{|V|} (1-p)^{|E|} W_G(p/(q(1-p)), p/(1-p)); falls back to plain
// enumeration at p = 1.
double partition_via_rank(const Graph& g, const RCParams& params,
                          std::uint64_t budget = 1u << 22);

}  // namespace rcm

#endif
