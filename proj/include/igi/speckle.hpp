#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "igi/image.hpp"
#include "igi/kernels.hpp"

namespace igi {

// Pseudo-thermal field parameters. Identical config (including seed) yields
// bit-identical frame sequences, frame n addressable without generating
// frames 1..n-1.
struct FieldConfig {
    int width = 400;
    int height = 280;
    // 1/e half-width of the intensity autocovariance, in pixels. Zero means
    // spatially white speckle.
    double grain_radius = 3.0;
    double mean_intensity = 1.0;
    std::uint64_t seed = 1;

    Dims dims() const { return {width, height}; }
    void validate() const;
};

struct DetectorConfig {
    int quant_bits = 8;        // per-pixel readout depth, [1, 16]
    double noise_sigma = 0.0;  // additive readout noise before quantization

    std::int64_t max_code() const { return (std::int64_t(1) << quant_bits) - 1; }
    // The configured field mean maps to this code.
    std::int64_t mid_code() const { return std::int64_t(1) << (quant_bits - 1); }
    void validate() const;
};

// Gaussian low-pass taps realizing the grain size: sigma = r / sqrt(2),
// truncated at 3 sigma, so the filtered field's intensity autocovariance is
// approximately exp(-d^2 / r^2).
std::vector<double> grain_taps(double grain_radius);

// Frame n (n >= 1) of the i.i.d. pseudo-thermal sequence: circular complex
// Gaussian noise, low-pass filtered, squared magnitude, scaled so the
// ensemble mean equals cfg.mean_intensity exactly.
SpeckleFrame generate_frame(const FieldConfig& cfg, std::uint64_t n,
                            kernels::Exec exec = kernels::Exec::parallel);

// S = sum_x I(x) * T(x), accumulated serially in row-major order.
double bucket_signal(const SpeckleFrame& frame, const ObjectMask& mask);

// Detector readout: seeded Gaussian noise, clamp at zero, scale so
// cfg.mean_intensity maps to det.mid_code(), round half-up, saturate to
// [0, 2^quant_bits - 1]. `channel` keeps multiple detectors observing the
// same frame statistically independent.
SpeckleFrame quantize_frame(const SpeckleFrame& frame, const FieldConfig& cfg,
                            const DetectorConfig& det, std::uint64_t n, std::uint32_t channel = 0,
                            kernels::Exec exec = kernels::Exec::parallel);

struct MaskSpec {
    enum class Kind { glyph_th, rectangle, disk, pgm_file };
    Kind kind = Kind::glyph_th;
    // rectangle: x0, y0, width, height (negative width/height = full extent)
    int rect_x = 0, rect_y = 0, rect_w = -1, rect_h = -1;
    // disk: centre and radius in pixels
    int disk_cx = 0, disk_cy = 0;
    double disk_r = 0.0;
    std::string path;  // pgm_file
};

// Accepted forms: "th", "rect", "rect:x,y,w,h", "disk:cx,cy,r", "pgm:PATH".
MaskSpec parse_mask_spec(const std::string& text);

ObjectMask make_object_mask(const MaskSpec& spec, Dims dims);

}  // namespace igi
