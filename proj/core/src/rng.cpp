#include "rcm/rng.hpp"

namespace rcm {

// Stafford mix 13: the splitmix64 output function.
std::uint64_t CounterRng::mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) {
    key_ = mix(seed ^ mix(stream * kGamma + 0x1F0A2BE71D367BF3ull));
}

}  // namespace rcm
