#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace igi {

// Philox4x32-10 counter-based generator. A block is a pure function of
// (counter, key), so any (seed, frame, pixel) sample can be produced out of
// order, in parallel, with bit-identical results.
struct Philox4x32 {
    static constexpr std::uint32_t mult0 = 0xD2511F53u;
    static constexpr std::uint32_t mult1 = 0xCD9E8D57u;
    static constexpr std::uint32_t weyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t weyl1 = 0xBB67AE85u;

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            if (round != 0) {
                key[0] += weyl0;
                key[1] += weyl1;
            }
            const std::uint64_t p0 = std::uint64_t(mult0) * ctr[0];
            const std::uint64_t p1 = std::uint64_t(mult1) * ctr[2];
            ctr = {std::uint32_t(p1 >> 32) ^ ctr[1] ^ key[0], std::uint32_t(p1),
                   std::uint32_t(p0 >> 32) ^ ctr[3] ^ key[1], std::uint32_t(p0)};
        }
        return ctr;
    }
};

// Counter layout used throughout the simulator: the 64-bit seed is the key,
// the counter packs (pixel, purpose, frame). `purpose` separates independent
// random streams drawn for the same (seed, frame, pixel).
enum class RandPurpose : std::uint32_t {
    field_noise = 0,
    readout_noise_base = 1,  // + detector channel
};

inline std::array<std::uint64_t, 2> random_words(std::uint64_t seed, std::uint64_t frame,
                                                 std::uint32_t pixel, std::uint32_t purpose) {
    const std::array<std::uint32_t, 4> ctr = {pixel, purpose, std::uint32_t(frame),
                                              std::uint32_t(frame >> 32)};
    const std::array<std::uint32_t, 2> key = {std::uint32_t(seed), std::uint32_t(seed >> 32)};
    const auto r = Philox4x32::block(ctr, key);
    return {std::uint64_t(r[0]) | (std::uint64_t(r[1]) << 32),
            std::uint64_t(r[2]) | (std::uint64_t(r[3]) << 32)};
}

// Uniform double in (0, 1]: 53-bit mantissa, never zero so it is safe
// under log().
inline double unit_double(std::uint64_t word) {
    return double((word >> 11) + 1) * 0x1.0p-53;
}

struct GaussPair {
    double a;
    double b;
};

// Two independent standard normals per (seed, frame, pixel, purpose) via
// Box-Muller on one Philox block.
inline GaussPair gaussian_pair(std::uint64_t seed, std::uint64_t frame, std::uint32_t pixel,
                               std::uint32_t purpose) {
    const auto w = random_words(seed, frame, pixel, purpose);
    const double u1 = unit_double(w[0]);
    const double u2 = unit_double(w[1]);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace igi
