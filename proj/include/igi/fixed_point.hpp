#pragma once

#include <cstdint>
#include <string>

#include "igi/errors.hpp"

namespace igi {

enum class OverflowPolicy { error, saturate };

// Register widths of the emulated on-chip datapath. R_S and R_I store raw
// (nonnegative) readouts in unsigned registers of s_bits / i_bits; R_G is a
// signed two's-complement accumulator of g_bits. Differences and products
// are evaluated exactly in wider intermediate registers (width + 1 for a
// difference of two unsigned values, sum of operand widths for a product),
// so with in-range inputs only the accumulate stage can overflow.
struct FixedPointConfig {
    int s_bits = 40;
    int i_bits = 8;
    int g_bits = 32;
    OverflowPolicy policy = OverflowPolicy::error;

    void validate() const;

    std::int64_t s_max() const { return unsigned_max(s_bits); }
    std::int64_t i_max() const { return unsigned_max(i_bits); }
    std::int64_t g_min() const {
        return g_bits >= 64 ? INT64_MIN : -(std::int64_t(1) << (g_bits - 1));
    }
    std::int64_t g_max() const {
        return g_bits >= 64 ? INT64_MAX : (std::int64_t(1) << (g_bits - 1)) - 1;
    }

    static std::int64_t unsigned_max(int bits) {
        return bits >= 63 ? INT64_MAX : (std::int64_t(1) << bits) - 1;
    }
};

OverflowPolicy parse_overflow_policy(const std::string& name);
const char* overflow_policy_name(OverflowPolicy p);

}  // namespace igi
