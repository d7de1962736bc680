#pragma once

#include <array>
#include <cstdint>

namespace drisk {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). The output for
// a given (key, counter) does not depend on how many values were drawn before,
// which makes sampling independent of evaluation order.
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter ctr, Key key);

    explicit Philox4x32(std::uint64_t seed)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

    // Uniform on the open interval (0,1) with 53 random bits, addressed by
    // (stream, index). `lane` selects one of the two doubles in a block.
    double uniform(std::uint64_t index, std::uint32_t stream, int lane = 0) const;
    // Both lanes of one block.
    std::array<double, 2> uniform_pair(std::uint64_t index, std::uint32_t stream) const;

private:
    Key key_;
};

} // namespace drisk
