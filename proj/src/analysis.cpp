#include "igi/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace igi {

namespace {

struct Moments {
    double mean = 0.0;
    double var = 0.0;  // population variance
};

Moments moments(std::span<const double> v) {
    Moments m;
    if (v.empty()) return m;
    for (double x : v) m.mean += x;
    m.mean /= double(v.size());
    for (double x : v) m.var += (x - m.mean) * (x - m.mean);
    m.var /= double(v.size());
    return m;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

QualityReport compare_reconstructions(const Reconstruction& a, const Reconstruction& b) {
    require_same_dims(a.values.dims(), b.values.dims(), "compare_reconstructions");
    const std::size_t n = a.values.size();
    const Moments ma = moments(a.values.span());
    const Moments mb = moments(b.values.span());

    QualityReport report;
    if (ma.var == 0.0 || mb.var == 0.0) {
        report.degenerate = true;
        report.pearson_r = 0.0;
    } else {
        double cov = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            cov += (a.values[p] - ma.mean) * (b.values[p] - mb.mean);
        cov /= double(n);
        report.pearson_r = cov / std::sqrt(ma.var * mb.var);
    }

    double sq = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t p = 0; p < n; ++p) {
        const double da = a.values[p] - ma.mean;
        const double db = b.values[p] - mb.mean;
        sq += (da - db) * (da - db);
        lo = std::min({lo, da, db});
        hi = std::max({hi, da, db});
    }
    const double rms = std::sqrt(sq / double(n));
    const double range = hi - lo;
    report.nrmsd = rms == 0.0 ? 0.0 : rms / range;
    return report;
}

QualityReport reconstruction_quality(const Reconstruction& recon, const ObjectMask& mask) {
    require_same_dims(recon.values.dims(), mask.dims(), "reconstruction_quality");
    const std::size_t n = recon.values.size();

    std::vector<double> fg, bg;
    fg.reserve(n);
    bg.reserve(n);
    for (std::size_t p = 0; p < n; ++p)
        (mask.transmissivity[p] >= 0.5 ? fg : bg).push_back(recon.values[p]);
    if (fg.empty() || bg.empty())
        throw DataError("reconstruction_quality: mask '" + mask.name +
                        "' has a single pixel class");

    const Moments mfg = moments(fg);
    const Moments mbg = moments(bg);
    QualityReport report;
    report.has_cnr = true;
    const double spread = std::sqrt(mfg.var + mbg.var);
    const double diff = mfg.mean - mbg.mean;
    if (spread == 0.0) {
        report.cnr = diff == 0.0 ? 0.0 : (diff > 0.0 ? cnr_cap : -cnr_cap);
    } else {
        report.cnr = std::clamp(diff / spread, -cnr_cap, cnr_cap);
    }

    Reconstruction mask_image{mask.transmissivity, recon.algorithm, 0, 1.0};
    const QualityReport versus = compare_reconstructions(recon, mask_image);
    report.pearson_r = versus.pearson_r;
    report.nrmsd = versus.nrmsd;
    report.degenerate = versus.degenerate;
    return report;
}

int bits_needed(double v) {
    if (!(v >= 0.0)) throw DataError("bits_needed: value must be nonnegative");
    if (v >= 0x1.0p63) throw DataError("bits_needed: value exceeds 2^63");
    return std::bit_width(std::uint64_t(std::floor(v)));
}

namespace {

GrowthSeries growth_series_impl(RecordSource& source,
                                std::span<const std::uint64_t> sample_points) {
    const Dims dims = source.dims();
    const std::size_t pixels = dims.pixels();
    for (std::size_t i = 0; i + 1 < sample_points.size(); ++i)
        if (sample_points[i] >= sample_points[i + 1])
            throw ConfigError("growth_series: sample points must be strictly increasing");
    if (sample_points.empty()) return {};
    if (sample_points.front() < 1)
        throw ConfigError("growth_series: sample points are 1-based");

    std::vector<double> gi_acc(pixels, 0.0), igi_acc(pixels, 0.0), prev(pixels, 0.0);
    double prev_bucket = 0.0;
    bool have_prev = false;

    GrowthSeries series;
    std::size_t next_sample = 0;
    std::uint64_t n = 0;
    Frame frame(dims);
    double bucket = 0.0;
    while (next_sample < sample_points.size() && source.next(bucket, frame)) {
        ++n;
        const double* f = frame.data();
        if (have_prev) {
            const double ds = bucket - prev_bucket;
            for (std::size_t p = 0; p < pixels; ++p) igi_acc[p] += ds * (f[p] - prev[p]);
        }
        for (std::size_t p = 0; p < pixels; ++p) {
            gi_acc[p] += bucket * f[p];
            prev[p] = f[p];
        }
        prev_bucket = bucket;
        have_prev = true;

        if (n == sample_points[next_sample]) {
            GrowthRow row;
            row.n = n;
            double gi_sum = 0.0, igi_sum = 0.0;
            for (std::size_t p = 0; p < pixels; ++p) {
                gi_sum += gi_acc[p];
                igi_sum += std::abs(igi_acc[p]);
            }
            row.gi_accum_mean = gi_sum / double(pixels);
            row.igi_accum_mean = igi_sum / double(pixels);
            row.gi_bits = bits_needed(row.gi_accum_mean);
            row.igi_bits = bits_needed(row.igi_accum_mean);
            series.rows.push_back(row);
            ++next_sample;
        }
    }
    if (n == 0) throw DataError("growth_series: empty stream");
    if (next_sample < sample_points.size())
        throw DataError("growth_series: sample point " +
                        std::to_string(sample_points[next_sample]) +
                        " beyond stream length " + std::to_string(n));
    return series;
}

}  // namespace

GrowthSeries growth_series(RecordSource& source, std::span<const std::uint64_t> sample_points) {
    return growth_series_impl(source, sample_points);
}

GrowthSeries growth_series(const MeasurementStream& stream,
                           std::span<const std::uint64_t> sample_points) {
    VectorSource source(stream);
    return growth_series_impl(source, sample_points);
}

MemoryReport memory_report(Dims dims, std::uint64_t measurements, int pixel_bits) {
    require_valid_dims(dims);
    if (measurements < 1) throw ConfigError("memory_report: measurements must be >= 1");
    if (pixel_bits < 1) throw ConfigError("memory_report: pixel_bits must be >= 1");
    MemoryReport report;
    report.igi_bits_total = dims.pixels() * std::uint64_t(pixel_bits);
    report.gi_bits_total = measurements * report.igi_bits_total;
    return report;
}

void write_growth_csv(std::ostream& out, const GrowthSeries& series) {
    out << "n,gi_accum_mean,igi_accum_mean,gi_bits,igi_bits\n";
    for (const GrowthRow& row : series.rows)
        out << row.n << "," << fmt_double(row.gi_accum_mean) << ","
            << fmt_double(row.igi_accum_mean) << "," << row.gi_bits << "," << row.igi_bits
            << "\n";
}

void write_memory_csv(std::ostream& out, Dims dims, std::uint64_t measurements, int pixel_bits,
                      const MemoryReport& report) {
    out << "width,height,measurements,pixel_bits,gi_bits_total,igi_bits_total\n";
    out << dims.width << "," << dims.height << "," << measurements << "," << pixel_bits << ","
        << report.gi_bits_total << "," << report.igi_bits_total << "\n";
}

void write_quality_csv(std::ostream& out, const QualityReport& report) {
    out << "pearson_r,nrmsd,cnr,degenerate\n";
    out << fmt_double(report.pearson_r) << "," << fmt_double(report.nrmsd) << ","
        << (report.has_cnr ? fmt_double(report.cnr) : std::string()) << ","
        << (report.degenerate ? 1 : 0) << "\n";
}

}  // namespace igi
