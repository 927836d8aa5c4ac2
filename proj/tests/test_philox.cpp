#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "igi/philox.hpp"

using namespace igi;

TEST_CASE("philox4x32-10 known-answer vectors") {
    // Reference vectors from the Random123 test suite.
    auto r = Philox4x32::block({0, 0, 0, 0}, {0, 0});
    CHECK(r[0] == 0x6627e8d5u);
    CHECK(r[1] == 0xe169c58du);
    CHECK(r[2] == 0xbc57ac4cu);
    CHECK(r[3] == 0x9b00dbd8u);

    r = Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                          {0xffffffffu, 0xffffffffu});
    CHECK(r[0] == 0x408f276du);
    CHECK(r[1] == 0x41c83b0eu);
    CHECK(r[2] == 0xa20bc7c6u);
    CHECK(r[3] == 0x6d5451fdu);

    r = Philox4x32::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                          {0xa4093822u, 0x299f31d0u});
    CHECK(r[0] == 0xd16cfe09u);
    CHECK(r[1] == 0x94fdccebu);
    CHECK(r[2] == 0x5001e420u);
    CHECK(r[3] == 0x24126ea1u);
}

TEST_CASE("random words are deterministic and counter-sensitive") {
    const auto a = random_words(7, 1, 0, 0);
    CHECK(a == random_words(7, 1, 0, 0));
    CHECK(a != random_words(7, 1, 1, 0));
    CHECK(a != random_words(7, 2, 0, 0));
    CHECK(a != random_words(8, 1, 0, 0));
    CHECK(a != random_words(7, 1, 0, 1));

    // High seed and frame bits must matter.
    CHECK(random_words(1ull << 40, 1, 0, 0) != random_words(1, 1, 0, 0));
    CHECK(random_words(7, 1ull << 40, 0, 0) != random_words(7, 1, 0, 0));
}

TEST_CASE("unit_double lands in (0, 1]") {
    CHECK(unit_double(0) > 0.0);
    CHECK(unit_double(UINT64_MAX) <= 1.0);
    CHECK(unit_double(UINT64_MAX) == doctest::Approx(1.0));
}

TEST_CASE("gaussian pairs have standard-normal moments") {
    const std::uint64_t samples = 200000;
    double sum = 0.0, sumsq = 0.0, cross = 0.0;
    for (std::uint64_t p = 0; p < samples; ++p) {
        const GaussPair g = gaussian_pair(123, 1, std::uint32_t(p), 0);
        sum += g.a + g.b;
        sumsq += g.a * g.a + g.b * g.b;
        cross += g.a * g.b;
    }
    const double n = 2.0 * double(samples);
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(std::abs(mean) < 0.01);             // SE ~ 0.0016
    CHECK(var == doctest::Approx(1.0).epsilon(0.02));
    CHECK(std::abs(cross / double(samples)) < 0.01);
}
