#ifndef RCM_PARAMS_HPP
#define RCM_PARAMS_HPP

#include <stdexcept>

namespace rcm {

// Random-cluster parameters: 0 <= p <= 1, q > 0.
struct RCParams {
    double p = 0.5;
    double q = 1.0;

    RCParams() = default;
    RCParams(double p_, double q_) : p(p_), q(q_) {
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("RCParams: p outside [0,1]");
        if (!(q > 0.0)) throw std::invalid_argument("RCParams: q must be positive");
    }

    // Conditional probability that an edge is open given the rest of the
    // configuration: p when the endpoints are joined off the edge, else
    // p/(p+(1-p)q).
    double open_prob(bool endpoints_joined_elsewhere) const {
        return endpoints_joined_elsewhere ? p : p / (p + (1.0 - p) * q);
    }
};

// p = 1 - e^{-βJ}: the coupling between the q-state Potts measure at (β,J)
// and the random-cluster measure at (p,q).
double potts_to_rc_p(double beta, double J);

}  // namespace rcm

#endif
