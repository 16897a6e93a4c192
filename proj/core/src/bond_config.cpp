#include "rcm/bond_config.hpp"

#include <stdexcept>

namespace rcm {

BondConfig BondConfig::from_mask(int edge_count, std::uint64_t mask) {
    BondConfig c(edge_count);
    for (int e = 0; e < edge_count && e < 64; ++e) c.states_[e] = (mask >> e) & 1;
    return c;
}

std::uint64_t BondConfig::to_mask() const {
    if (states_.size() > 64) throw std::logic_error("BondConfig::to_mask: more than 64 edges");
    std::uint64_t m = 0;
    for (std::size_t e = 0; e < states_.size(); ++e)
        if (states_[e]) m |= 1ull << e;
    return m;
}

int BondConfig::open_count() const {
    int c = 0;
    for (auto s : states_) c += s;
    return c;
}

bool BondConfig::dominated_by(const BondConfig& o) const {
    if (states_.size() != o.states_.size())
        throw std::invalid_argument("BondConfig: length mismatch");
    for (std::size_t e = 0; e < states_.size(); ++e)
        if (states_[e] > o.states_[e]) return false;
    return true;
}

std::string BondConfig::to_hex() const {
    const int digits = (edge_count() + 3) / 4;
    std::string out(digits == 0 ? 1 : digits, '0');
    if (digits == 0) return out;
    for (int e = 0; e < edge_count(); ++e) {
        if (!states_[e]) continue;
        int digit = e / 4;
        int pos = digits - 1 - digit;  // edge 0 in the last digit
        int val = out[pos] <= '9' ? out[pos] - '0' : out[pos] - 'a' + 10;
        val |= 1 << (e % 4);
        out[pos] = val < 10 ? static_cast<char>('0' + val) : static_cast<char>('a' + val - 10);
    }
    return out;
}

BondConfig BondConfig::from_hex(int edge_count, const std::string& hex) {
    BondConfig c(edge_count);
    const int digits = (edge_count + 3) / 4;
    if (static_cast<int>(hex.size()) != (digits == 0 ? 1 : digits))
        throw std::invalid_argument("BondConfig::from_hex: wrong digit count");
    for (int e = 0; e < edge_count; ++e) {
        char ch = hex[(digits - 1 - e / 4)];
        int val = ch >= '0' && ch <= '9' ? ch - '0'
                : ch >= 'a' && ch <= 'f' ? ch - 'a' + 10
                                         : throw std::invalid_argument("BondConfig::from_hex: bad digit");
        if (val >> (e % 4) & 1) c.states_[e] = 1;
    }
    return c;
}

}  // namespace rcm
