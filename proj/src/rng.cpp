#include "drisk/rng.hpp"

namespace drisk {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo)
{
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

} // namespace

Philox4x32::Counter Philox4x32::generate(Counter c, Key k)
{
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            k[0] += kW0;
            k[1] += kW1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kM0, c[0], hi0, lo0);
        mulhilo(kM1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
    return c;
}

double Philox4x32::uniform(std::uint64_t index, std::uint32_t stream, int lane) const
{
    const Counter ctr{static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), stream, 0u};
    const Counter out = generate(ctr, key_);
    const int j = lane == 0 ? 0 : 2;
    const std::uint64_t v = (static_cast<std::uint64_t>(out[j]) << 32) | out[j + 1];
    return (static_cast<double>(v >> 11) + 0.5) * 0x1.0p-53;
}

std::array<double, 2> Philox4x32::uniform_pair(std::uint64_t index, std::uint32_t stream) const
{
    const Counter ctr{static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), stream, 0u};
    const Counter out = generate(ctr, key_);
    auto to_unit = [](std::uint32_t hi, std::uint32_t lo) {
        const std::uint64_t v = (static_cast<std::uint64_t>(hi) << 32) | lo;
        return (static_cast<double>(v >> 11) + 0.5) * 0x1.0p-53;
    };
    return {to_unit(out[0], out[1]), to_unit(out[2], out[3])};
}

} // namespace drisk
