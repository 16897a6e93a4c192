#ifndef RCM_RNG_HPP
#define RCM_RNG_HPP

#include <cstdint>

namespace rcm {

// Counter-based generator: output i of a stream is a fixed 64-bit mix of
// (key, i), so any position can be regenerated without replaying the
// stream.  Streams are keyed by (seed, stream id); every chain, replica
// and CFTP time index gets its own stream or counter slot.  This is what
// makes the coupling-from-the-past randomness reuse exact: the draw at
// time -t is a pure function of (seed, t).
class CounterRng {
  public:
    CounterRng() = default;
    CounterRng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t at(std::uint64_t index) const { return mix(key_ + index * kGamma); }
    double unit_at(std::uint64_t index) const {
        return static_cast<double>(at(index) >> 11) * 0x1.0p-53;
    }

    std::uint64_t next_u64() { return at(counter_++); }
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [0, n) by 128-bit multiply (bias < 2^-64, irrelevant here
    // but cheap).
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    std::uint64_t counter() const { return counter_; }
    void seek(std::uint64_t index) { counter_ = index; }

    static std::uint64_t mix(std::uint64_t z);

  private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

}  // namespace rcm

#endif
