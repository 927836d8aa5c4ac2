#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "igi/image.hpp"
#include "igi/oracles.hpp"
#include "igi/stream.hpp"

namespace igi {

// CNR is capped here instead of reporting infinities on noiseless inputs.
inline constexpr double cnr_cap = 1e6;

struct QualityReport {
    double pearson_r = 0.0;
    double nrmsd = 0.0;
    double cnr = 0.0;
    bool has_cnr = false;
    // Set instead of propagating NaN when an input has zero variance.
    bool degenerate = false;
};

// Pearson r and NRMSD between two reconstructions after subtracting each
// image's mean (the estimators fix the image only up to an affine offset).
// NRMSD normalizes the RMS difference by the pooled value range, which keeps
// it symmetric in (a, b).
QualityReport compare_reconstructions(const Reconstruction& a, const Reconstruction& b);

// CNR between mask foreground and background pixel populations, plus
// Pearson r between reconstruction and mask.
QualityReport reconstruction_quality(const Reconstruction& recon, const ObjectMask& mask);

// Storage bits for a nonnegative magnitude: ceil(log2(floor(v) + 1)).
// Exact on integers: bits_needed(2^k - 1) == k.
int bits_needed(double v);

struct GrowthRow {
    std::uint64_t n = 0;        // measurements consumed
    double gi_accum_mean = 0.0; // per-pixel mean of sum_i S_i I_i(x)
    double igi_accum_mean = 0.0;  // per-pixel mean of |G_n(x)| over n-1 pairs
    int gi_bits = 0;
    int igi_bits = 0;
};

struct GrowthSeries {
    std::vector<GrowthRow> rows;
};

// Replays the stream once, tracking both the conventional product
// accumulator and the differential accumulator, and samples both at the
// requested measurement indices (sorted, 1-based, within the stream).
GrowthSeries growth_series(RecordSource& source, std::span<const std::uint64_t> sample_points);
GrowthSeries growth_series(const MeasurementStream& stream,
                           std::span<const std::uint64_t> sample_points);

struct MemoryReport {
    std::uint64_t gi_bits_total = 0;   // M frames of pixel_bits each
    std::uint64_t igi_bits_total = 0;  // one frame of pixel_bits
};

// The raw-frame storage comparison: conventional correlation needs every
// frame, the differential path needs exactly one.
MemoryReport memory_report(Dims dims, std::uint64_t measurements, int pixel_bits);

// CSV emission: header row, fixed column order, '.' decimal separator,
// newline-terminated rows, doubles at full round-trip precision.
void write_growth_csv(std::ostream& out, const GrowthSeries& series);
void write_memory_csv(std::ostream& out, Dims dims, std::uint64_t measurements, int pixel_bits,
                      const MemoryReport& report);
void write_quality_csv(std::ostream& out, const QualityReport& report);

}  // namespace igi
