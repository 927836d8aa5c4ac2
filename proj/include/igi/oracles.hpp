#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "igi/image.hpp"
#include "igi/stream.hpp"

namespace igi {

enum class Algorithm { gi, igi, igi_s, igi_i, igi_s_neg, igi_i_neg, hbt, hbt_igi };

const char* algorithm_name(Algorithm a);
Algorithm parse_algorithm(const std::string& name);

// A reconstructed image together with the estimator that produced it.
// `normalization` is the divisor that was applied to the raw accumulator.
struct Reconstruction {
    Image2D<double> values;
    Algorithm algorithm = Algorithm::gi;
    std::uint64_t n_used = 0;  // measurements (GI/HBT) or differential pairs
    double normalization = 1.0;
};

// Batch reference correlators. All accumulate in double precision with a
// fixed order: measurements ascending, pixels row-major. They are the
// ground truth the streaming engine is tested against, and they pay the
// full storage cost the streaming path avoids.

// G(x) = (1/M) sum S_n I_n(x) - (1/M) sum S_n * (1/M) sum I_n(x)
Reconstruction gi_background_subtraction(const MeasurementStream& stream);

// G(x) = (1/2N) sum_{n=1..N} (S_{n+1} - S_n)(I_{n+1}(x) - I_n(x))
Reconstruction igi_offline(const MeasurementStream& stream);

// The four expansion terms of the differential estimator, signs applied;
// they sum pixelwise to igi_offline up to floating-point round-off.
std::array<Reconstruction, 4> igi_four_term_expansion(const MeasurementStream& stream);

// Second-order correlation of two equal-length frame sequences against the
// fixed test pixel x_t0, evaluated for every reference pixel.
Reconstruction hbt_offline(const std::vector<Frame>& test, const std::vector<Frame>& reference,
                           Pixel x_t0);
Reconstruction hbt_igi_offline(const std::vector<Frame>& test,
                               const std::vector<Frame>& reference, Pixel x_t0);

enum class Variant { igi_s, igi_i, igi_s_neg, igi_i_neg };

// Single-beam differential estimators, divisor 1/N over differential pairs:
//   igi_s:     (1/N) sum  (S_{n+1} - S_n) I_{n+1}(x)
//   igi_i:     (1/N) sum  S_{n+1} (I_{n+1}(x) - I_n(x))
//   igi_s_neg: (1/N) sum -(S_{n+1} - S_n) I_n(x)
//   igi_i_neg: (1/N) sum -S_n (I_{n+1}(x) - I_n(x))
Reconstruction variant_offline(const MeasurementStream& stream, Variant which);

// The two product-sum terms of a variant, accumulated independently of the
// differential route; they sum pixelwise to variant_offline exactly.
std::array<Reconstruction, 2> variant_expansion(const MeasurementStream& stream, Variant which);

// One-pass accumulator computing the same three sums as
// gi_background_subtraction in the same order, for replaying recordings that
// do not fit in memory. Bit-identical to the batch oracle.
class GiAccumulator {
public:
    explicit GiAccumulator(Dims dims);

    void push(double bucket, const Frame& frame);
    std::uint64_t measurements() const { return measurements_; }
    // Current estimate; zero image before the first measurement.
    Reconstruction snapshot() const;

private:
    Dims dims_;
    std::vector<double> sum_si_;
    std::vector<double> sum_i_;
    double sum_s_ = 0.0;
    std::uint64_t measurements_ = 0;
};

// One-pass counterpart of hbt_offline for a fixed test pixel; the caller
// feeds the test-beam sample and the reference frame per measurement.
class HbtAccumulator {
public:
    explicit HbtAccumulator(Dims dims);

    void push(double test_sample, const Frame& reference);
    std::uint64_t measurements() const { return measurements_; }
    Reconstruction snapshot() const;

private:
    Dims dims_;
    std::vector<double> sum_tr_;
    std::vector<double> sum_r_;
    double sum_t_ = 0.0;
    std::uint64_t measurements_ = 0;
};

}  // namespace igi
