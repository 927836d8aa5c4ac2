#include "igi/kernels.hpp"

#include <cassert>
#include <cmath>

#include "igi/philox.hpp"

namespace igi::kernels {

namespace {

inline void noise_pixel(std::uint64_t seed, std::uint64_t frame, std::uint32_t p, double* re,
                        double* im) {
    const GaussPair g =
        gaussian_pair(seed, frame, p, std::uint32_t(RandPurpose::field_noise));
    re[p] = g.a;
    im[p] = g.b;
}

// One output row of the horizontal pass. Index wrap handles kernels wider
// than the row.
inline void conv_row(const double* in, double* out, int w, std::span<const double> taps) {
    const int radius = int(taps.size() / 2);
    for (int x = 0; x < w; ++x) {
        double acc = 0.0;
        for (int j = -radius; j <= radius; ++j) {
            int xi = (x + j) % w;
            if (xi < 0) xi += w;
            acc += taps[std::size_t(j + radius)] * in[xi];
        }
        out[x] = acc;
    }
}

inline void conv_col_row(const double* in, double* out, Dims dims, int y,
                         std::span<const double> taps) {
    const int radius = int(taps.size() / 2);
    const int w = dims.width;
    const int h = dims.height;
    for (int x = 0; x < w; ++x) out[x] = 0.0;
    for (int j = -radius; j <= radius; ++j) {
        int yi = (y + j) % h;
        if (yi < 0) yi += h;
        const double t = taps[std::size_t(j + radius)];
        const double* src = in + std::size_t(yi) * w;
        for (int x = 0; x < w; ++x) out[x] += t * src[x];
    }
}

inline void quantize_pixel(std::uint64_t seed, std::uint64_t frame, std::uint32_t channel,
                           double noise_sigma, double scale, std::int64_t max_code,
                           const double* in, double* out, std::uint32_t p) {
    double v = in[p];
    if (noise_sigma > 0.0) {
        const GaussPair g = gaussian_pair(
            seed, frame, p, std::uint32_t(RandPurpose::readout_noise_base) + channel);
        v += noise_sigma * g.a;
    }
    if (v < 0.0) v = 0.0;
    // Round half-up, then saturate at the code range.
    double code = std::floor(v * scale + 0.5);
    const double maxd = double(max_code);
    if (code > maxd) code = maxd;
    out[p] = code;
}

}  // namespace

void fill_complex_noise(Exec exec, std::uint64_t seed, std::uint64_t frame, std::span<double> re,
                        std::span<double> im) {
    assert(re.size() == im.size());
    const std::int64_t n = std::int64_t(re.size());
    double* rp = re.data();
    double* ip = im.data();
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t p = 0; p < n; ++p)
            noise_pixel(seed, frame, std::uint32_t(p), rp, ip);
    } else {
        for (std::int64_t p = 0; p < n; ++p) noise_pixel(seed, frame, std::uint32_t(p), rp, ip);
    }
}

void wrap_convolve_rows(Exec exec, Dims dims, std::span<const double> in, std::span<double> out,
                        std::span<const double> taps) {
    assert(in.size() == dims.pixels() && out.size() == dims.pixels());
    assert(taps.size() % 2 == 1);
    const int h = dims.height;
    const int w = dims.width;
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (int y = 0; y < h; ++y)
            conv_row(in.data() + std::size_t(y) * w, out.data() + std::size_t(y) * w, w, taps);
    } else {
        for (int y = 0; y < h; ++y)
            conv_row(in.data() + std::size_t(y) * w, out.data() + std::size_t(y) * w, w, taps);
    }
}

void wrap_convolve_cols(Exec exec, Dims dims, std::span<const double> in, std::span<double> out,
                        std::span<const double> taps) {
    assert(in.size() == dims.pixels() && out.size() == dims.pixels());
    assert(taps.size() % 2 == 1);
    const int h = dims.height;
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (int y = 0; y < h; ++y)
            conv_col_row(in.data(), out.data() + std::size_t(y) * dims.width, dims, y, taps);
    } else {
        for (int y = 0; y < h; ++y)
            conv_col_row(in.data(), out.data() + std::size_t(y) * dims.width, dims, y, taps);
    }
}

void intensity_from_field(Exec exec, std::span<const double> re, std::span<const double> im,
                          double scale, std::span<double> out) {
    const std::int64_t n = std::int64_t(out.size());
    assert(re.size() == out.size() && im.size() == out.size());
    const double* rp = re.data();
    const double* ip = im.data();
    double* op = out.data();
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t p = 0; p < n; ++p) op[p] = (rp[p] * rp[p] + ip[p] * ip[p]) * scale;
    } else {
        for (std::int64_t p = 0; p < n; ++p) op[p] = (rp[p] * rp[p] + ip[p] * ip[p]) * scale;
    }
}

void quantize_readout(Exec exec, std::uint64_t seed, std::uint64_t frame, std::uint32_t channel,
                      double noise_sigma, double scale, std::int64_t max_code,
                      std::span<const double> in, std::span<double> out) {
    assert(in.size() == out.size());
    const std::int64_t n = std::int64_t(in.size());
    const double* ip = in.data();
    double* op = out.data();
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t p = 0; p < n; ++p)
            quantize_pixel(seed, frame, channel, noise_sigma, scale, max_code, ip, op,
                           std::uint32_t(p));
    } else {
        for (std::int64_t p = 0; p < n; ++p)
            quantize_pixel(seed, frame, channel, noise_sigma, scale, max_code, ip, op,
                           std::uint32_t(p));
    }
}

void accumulate_diff_product(Exec exec, std::span<double> acc, std::span<const double> cur,
                             std::span<const double> prev, double scale) {
    assert(acc.size() == cur.size() && acc.size() == prev.size());
    const std::int64_t n = std::int64_t(acc.size());
    double* ap = acc.data();
    const double* cp = cur.data();
    const double* pp = prev.data();
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t p = 0; p < n; ++p) ap[p] += scale * (cp[p] - pp[p]);
    } else {
        for (std::int64_t p = 0; p < n; ++p) ap[p] += scale * (cp[p] - pp[p]);
    }
}

void accumulate_scaled(Exec exec, std::span<double> acc, std::span<const double> cur,
                       double scale) {
    assert(acc.size() == cur.size());
    const std::int64_t n = std::int64_t(acc.size());
    double* ap = acc.data();
    const double* cp = cur.data();
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t p = 0; p < n; ++p) ap[p] += scale * cp[p];
    } else {
        for (std::int64_t p = 0; p < n; ++p) ap[p] += scale * cp[p];
    }
}

void accumulate_diff_product_store(Exec exec, std::span<double> acc,
                                   std::span<const double> cur, std::span<double> prev,
                                   double scale) {
    assert(acc.size() == cur.size() && acc.size() == prev.size());
    const std::int64_t n = std::int64_t(acc.size());
    double* ap = acc.data();
    const double* cp = cur.data();
    double* pp = prev.data();
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t p = 0; p < n; ++p) {
            ap[p] += scale * (cp[p] - pp[p]);
            pp[p] = cp[p];
        }
    } else {
        for (std::int64_t p = 0; p < n; ++p) {
            ap[p] += scale * (cp[p] - pp[p]);
            pp[p] = cp[p];
        }
    }
}

void accumulate_scaled_store(Exec exec, std::span<double> acc, std::span<const double> cur,
                             std::span<double> prev, double scale) {
    assert(acc.size() == cur.size() && acc.size() == prev.size());
    const std::int64_t n = std::int64_t(acc.size());
    double* ap = acc.data();
    const double* cp = cur.data();
    double* pp = prev.data();
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t p = 0; p < n; ++p) {
            ap[p] += scale * cp[p];
            pp[p] = cp[p];
        }
    } else {
        for (std::int64_t p = 0; p < n; ++p) {
            ap[p] += scale * cp[p];
            pp[p] = cp[p];
        }
    }
}

double sum_ordered(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc;
}

double dot_ordered(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

}  // namespace igi::kernels
