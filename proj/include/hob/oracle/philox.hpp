#pragma once

#include <array>
#include <cstdint>

namespace hob {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123). A
/// block is a pure function of (counter, key), so any path can be generated
/// independently of every other.
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter ctr, Key key) noexcept {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += 0x9E3779B9u;
                key[1] += 0xBB67AE85u;
            }
            const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
        }
        return ctr;
    }
};

/// Uniform variates for one stream (one simulated path). Stream `path` under
/// `seed` uses counters (path_lo, path_hi, block, 0) and key (seed_lo,
/// seed_hi); each block yields two 53-bit uniforms in (0, 1).
class PathUniforms {
public:
    PathUniforms(std::uint64_t seed, std::uint64_t path) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          path_lo_(static_cast<std::uint32_t>(path)),
          path_hi_(static_cast<std::uint32_t>(path >> 32)) {}

    /// The draw-th uniform of this stream.
    double operator()(std::uint32_t draw) const noexcept {
        const auto out = Philox4x32::block({path_lo_, path_hi_, draw / 2, 0}, key_);
        const std::size_t w = 2 * (draw % 2);
        const std::uint64_t bits = (std::uint64_t{out[w + 1]} << 32) | out[w];
        return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    Philox4x32::Key key_;
    std::uint32_t path_lo_;
    std::uint32_t path_hi_;
};

}  // namespace hob
