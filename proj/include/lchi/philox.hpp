#pragma once

#include <array>
#include <cstdint>

namespace lchi {

// Philox4x32-10 counter-based generator (Salmon et al. round function).
// Stateless: output is a pure function of (counter, key), which is what makes
// sampling reproducible and order-independent across workers.
namespace philox {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
constexpr int kRounds = 10;

inline std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> c,
                                          std::array<std::uint32_t, 2> k) {
    for (int r = 0; r < kRounds; ++r) {
        std::uint64_t p0 = std::uint64_t(kMul0) * c[0];
        std::uint64_t p1 = std::uint64_t(kMul1) * c[2];
        std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
        k[0] += kWeyl0;
        k[1] += kWeyl1;
    }
    return c;
}

// Single uniform u32 keyed by (seed, index pair); handy for seeding choices
// outside the hot sampling loop.
inline std::uint32_t uniform_u32(std::uint64_t seed, std::uint64_t i, std::uint32_t lane_tag) {
    auto r = block({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32),
                    lane_tag, 0},
                   {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
    return r[0];
}

inline double uniform01(std::uint64_t seed, std::uint64_t i, std::uint32_t lane_tag) {
    return uniform_u32(seed, i, lane_tag) * 0x1p-32;
}

}  // namespace philox
}  // namespace lchi
