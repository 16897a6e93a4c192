#ifndef RCM_BOND_CONFIG_HPP
#define RCM_BOND_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace rcm {

// ω : E -> {0,1}.  Kept as a plain byte vector; graphs here are small and
// the samplers poke single edges constantly.
class BondConfig {
  public:
    BondConfig() = default;
    explicit BondConfig(int edge_count, bool open_all = false)
        : states_(edge_count, open_all ? 1 : 0) {}

    // Low bits of `mask` populate edges 0,1,... (enumeration helper).
    static BondConfig from_mask(int edge_count, std::uint64_t mask);
    std::uint64_t to_mask() const;  // requires edge_count <= 64

    int edge_count() const { return static_cast<int>(states_.size()); }
    bool open(int e) const { return states_[e] != 0; }
    void set(int e, bool open) { states_[e] = open ? 1 : 0; }

    int open_count() const;

    bool operator==(const BondConfig& o) const { return states_ == o.states_; }
    bool operator!=(const BondConfig& o) const { return states_ != o.states_; }

    // Pointwise partial order on Ω.
    bool dominated_by(const BondConfig& o) const;

    // Hex dump, 4 edges per digit, edge 0 in the lowest bit of the last digit.
    std::string to_hex() const;
    static BondConfig from_hex(int edge_count, const std::string& hex);

  private:
    std::vector<std::uint8_t> states_;
};

}  // namespace rcm

#endif
