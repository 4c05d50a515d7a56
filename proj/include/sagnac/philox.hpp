#ifndef SAGNAC_PHILOX_HPP
#define SAGNAC_PHILOX_HPP

#include <array>
#include <cstdint>

namespace sagnac
{

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). The output
// is a pure function of (counter, key), so any partition of the counter
// space across workers reproduces the serial stream exactly.
class Philox4x32
{
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter counter, Key key) noexcept
    {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            counter = single_round(counter, key);
        }
        return counter;
    }

    explicit Philox4x32(std::uint64_t seed) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}
    {
    }

    // Two independent uniforms in [0, 1) for draw `index` of `stream`.
    std::array<double, 2> uniforms(std::uint64_t index, std::uint32_t stream = 0) const noexcept
    {
        const Counter out = block({static_cast<std::uint32_t>(index),
                                   static_cast<std::uint32_t>(index >> 32), stream, 0},
                                  key_);
        return {to_unit(out[0], out[1]), to_unit(out[2], out[3])};
    }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

    static Counter single_round(const Counter &c, const Key &k) noexcept
    {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }

    static double to_unit(std::uint32_t hi, std::uint32_t lo) noexcept
    {
        const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
        return static_cast<double>(bits >> 11) * 0x1.0p-53;
    }

    Key key_;
};

} // namespace sagnac

#endif
