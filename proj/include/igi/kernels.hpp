#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "igi/image.hpp"

namespace igi::kernels {

// Every kernel exists in a serial and an OpenMP form. The serial form is the
// reference: all loops write disjoint outputs from shared read-only inputs,
// so the parallel form must produce bit-identical results. Reductions that
// would depend on thread count (bucket sums, oracle accumulations) are kept
// serial with a documented order instead.
enum class Exec { serial, parallel };

// Per-pixel standard-normal pairs from the counter-based generator.
void fill_complex_noise(Exec exec, std::uint64_t seed, std::uint64_t frame,
                        std::span<double> re, std::span<double> im);

// Circular (wrap-around) separable convolution. `taps` has odd length
// 2R + 1 centred on zero lag. Out-of-place: `in` and `out` must not alias.
void wrap_convolve_rows(Exec exec, Dims dims, std::span<const double> in, std::span<double> out,
                        std::span<const double> taps);
void wrap_convolve_cols(Exec exec, Dims dims, std::span<const double> in, std::span<double> out,
                        std::span<const double> taps);

// out[p] = (re[p]^2 + im[p]^2) * scale
void intensity_from_field(Exec exec, std::span<const double> re, std::span<const double> im,
                          double scale, std::span<double> out);

// Detector readout: add sigma-scaled Gaussian noise, clamp at zero, scale,
// round half-up, saturate at max_code.
void quantize_readout(Exec exec, std::uint64_t seed, std::uint64_t frame, std::uint32_t channel,
                      double noise_sigma, double scale, std::int64_t max_code,
                      std::span<const double> in, std::span<double> out);

// acc[p] += scale * (cur[p] - prev[p])   (IGI and IGI_I updates)
void accumulate_diff_product(Exec exec, std::span<double> acc, std::span<const double> cur,
                             std::span<const double> prev, double scale);

// acc[p] += scale * cur[p]               (IGI_S update)
void accumulate_scaled(Exec exec, std::span<double> acc, std::span<const double> cur,
                       double scale);

// Fused register-workflow step: the accumulator update plus the overwrite
// of the previous-frame register, one memory pass.
//   acc[p] += scale * (cur[p] - prev[p]); prev[p] = cur[p]
void accumulate_diff_product_store(Exec exec, std::span<double> acc,
                                   std::span<const double> cur, std::span<double> prev,
                                   double scale);
//   acc[p] += scale * cur[p]; prev[p] = cur[p]
void accumulate_scaled_store(Exec exec, std::span<double> acc, std::span<const double> cur,
                             std::span<double> prev, double scale);

// Serial sums in index order; used where the summation order is part of the
// contract (bucket signals, oracle accumulations).
double sum_ordered(std::span<const double> v);
double dot_ordered(std::span<const double> a, std::span<const double> b);

}  // namespace igi::kernels
