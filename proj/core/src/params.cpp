#include "rcm/params.hpp"

#include <cmath>

namespace rcm {

double potts_to_rc_p(double beta, double J) {
    if (beta < 0.0 || J < 0.0)
        throw std::invalid_argument("potts_to_rc_p: beta*J must be nonnegative");
    return 1.0 - std::exp(-beta * J);
}

}  // namespace rcm
