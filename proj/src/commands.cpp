#include "igi/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <vector>

#include "igi/analysis.hpp"
#include "igi/engine.hpp"
#include "igi/kernels.hpp"
#include "igi/oracles.hpp"
#include "igi/pgm.hpp"
#include "igi/recording.hpp"
#include "igi/speckle.hpp"

namespace igi {

namespace {

namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

void report_rate(const char* command, std::uint64_t measurements, double seconds) {
    std::printf("%s: %llu measurements in %.3f s (%.1f meas/s)\n", command,
                static_cast<unsigned long long>(measurements), seconds,
                seconds > 0.0 ? double(measurements) / seconds : 0.0);
}

std::string ensure_out_dir(const ExperimentConfig& cfg) {
    fs::create_directories(cfg.out_dir);
    return cfg.out_dir;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string snapshot_base(const std::string& dir, Algorithm algo, std::uint64_t n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "_n%08llu", static_cast<unsigned long long>(n));
    return dir + "/" + algorithm_name(algo) + buf;
}

void write_reconstruction(const std::string& base, const Reconstruction& recon,
                          std::map<std::string, std::string> extra = {}) {
    extra["algorithm"] = algorithm_name(recon.algorithm);
    extra["n"] = std::to_string(recon.n_used);
    extra["divisor"] = fmt(recon.normalization);
    write_scaled_pgm(base, recon.values, extra);
}

}  // namespace

std::string run_simulate(const ExperimentConfig& cfg) {
    cfg.validate();
    const Dims dims = cfg.field.dims();
    const ObjectMask mask = make_object_mask(parse_mask_spec(cfg.mask_spec), dims);
    const std::string dir = ensure_out_dir(cfg);
    const std::string path = dir + "/stream.igirec";

    RecordingHeader header;
    header.width = std::uint32_t(dims.width);
    header.height = std::uint32_t(dims.height);
    header.measurements = cfg.measurements;
    header.pixel_bits = std::uint32_t(cfg.detector.quant_bits);
    header.seed = cfg.field.seed;
    RecordingWriter writer(path, header);

    const std::size_t pixels = dims.pixels();
    const auto start = clock_type::now();
    for (std::uint64_t n = 1; n <= cfg.measurements; ++n) {
        const SpeckleFrame field = generate_frame(cfg.field, n);

        // Test arm: mask, digitize, sum the codes into the bucket value.
        SpeckleFrame masked{Frame(dims), n};
        for (std::size_t p = 0; p < pixels; ++p)
            masked.intensities[p] = field.intensities[p] * mask.transmissivity[p];
        const SpeckleFrame test_readout = quantize_frame(masked, cfg.field, cfg.detector, n, 0);
        const double bucket = kernels::sum_ordered(test_readout.intensities.span());

        // Reference arm: digitize the unmasked field.
        const SpeckleFrame reference = quantize_frame(field, cfg.field, cfg.detector, n, 1);
        writer.append(bucket, reference.intensities);
    }
    writer.finish();
    report_rate("simulate", cfg.measurements, seconds_since(start));
    std::printf("simulate: wrote %s (%llu bytes)\n", path.c_str(),
                static_cast<unsigned long long>(header.file_bytes()));
    return path;
}

namespace {

struct ProgressRow {
    std::uint64_t n = 0;
    double elapsed_s = 0.0;
    Image2D<double> image;
};

void write_progress_csv(const std::string& path, const std::vector<ProgressRow>& rows,
                        const Reconstruction& final_image) {
    std::ofstream csv(path);
    if (!csv) throw DataError("cannot open '" + path + "' for writing");
    csv << "n,elapsed_s,r_vs_final\n";
    for (const ProgressRow& row : rows) {
        const Reconstruction partial{row.image, final_image.algorithm, row.n, 1.0};
        const QualityReport q = compare_reconstructions(partial, final_image);
        csv << row.n << "," << fmt(row.elapsed_s) << "," << fmt(q.pearson_r) << "\n";
    }
    if (!csv) throw DataError("write failed for '" + path + "'");
}

}  // namespace

void run_reconstruct(const std::string& recording_path, const ExperimentConfig& cfg) {
    switch (cfg.algorithm) {
        case Algorithm::gi:
        case Algorithm::igi:
        case Algorithm::igi_s:
        case Algorithm::igi_i: break;
        default:
            throw ConfigError(std::string("reconstruct supports gi, igi, igi_s, igi_i; got '") +
                              algorithm_name(cfg.algorithm) + "'");
    }
    cfg.fixed.validate();
    if (cfg.cadence < 1) throw ConfigError("run.cadence must be >= 1");

    RecordingReader reader(recording_path);
    const Dims dims = reader.dims();
    const std::string dir = ensure_out_dir(cfg);

    std::vector<ProgressRow> progress;
    Reconstruction final_image;
    std::uint64_t measurements = 0;
    const auto start = clock_type::now();

    Frame frame(dims);
    double bucket = 0.0;
    if (cfg.algorithm == Algorithm::gi) {
        GiAccumulator acc(dims);
        while (reader.next(bucket, frame)) {
            acc.push(bucket, frame);
            ++measurements;
            if (measurements % cfg.cadence == 0)
                progress.push_back({measurements, seconds_since(start),
                                    acc.snapshot().values});
        }
        final_image = acc.snapshot();
    } else {
        StreamingEngine engine =
            cfg.mode == EngineMode::float64
                ? StreamingEngine(dims, cfg.algorithm)
                : StreamingEngine(dims, cfg.algorithm, cfg.fixed);
        while (reader.next(bucket, frame)) {
            engine.push(bucket, frame);
            ++measurements;
            if (measurements % cfg.cadence == 0)
                progress.push_back({measurements, seconds_since(start),
                                    engine.snapshot().image.values});
        }
        const Snapshot snap = engine.snapshot();
        final_image = snap.image;
        if (snap.overflow_count > 0)
            std::fprintf(stderr, "reconstruct: %llu saturated updates\n",
                         static_cast<unsigned long long>(snap.overflow_count));
    }
    const double elapsed = seconds_since(start);

    for (const ProgressRow& row : progress)
        write_scaled_pgm(snapshot_base(dir, cfg.algorithm, row.n), row.image,
                         {{"algorithm", algorithm_name(cfg.algorithm)},
                          {"n", std::to_string(row.n)}});
    const std::string final_base = dir + "/" + algorithm_name(cfg.algorithm) + "_final";
    write_reconstruction(final_base, final_image);

    // The final image is also the last progress row so the CSV always ends
    // at r = 1.
    if (progress.empty() || progress.back().n != measurements)
        progress.push_back({measurements, elapsed, final_image.values});
    write_progress_csv(dir + "/" + std::string(algorithm_name(cfg.algorithm)) + "_progress.csv",
                       progress, final_image);

    report_rate("reconstruct", measurements, elapsed);
    std::printf("reconstruct: wrote %s.pgm\n", final_base.c_str());
}

void run_hbt(const std::string& recording_path,
             const std::optional<std::string>& test_recording_path, Pixel x_t0,
             const ExperimentConfig& cfg) {
    if (cfg.algorithm != Algorithm::hbt && cfg.algorithm != Algorithm::hbt_igi)
        throw ConfigError(std::string("hbt supports hbt or hbt_igi; got '") +
                          algorithm_name(cfg.algorithm) + "'");

    RecordingReader reference(recording_path);
    const Dims dims = reference.dims();
    std::unique_ptr<RecordingReader> test;
    Dims test_dims = dims;
    if (test_recording_path) {
        test = std::make_unique<RecordingReader>(*test_recording_path);
        test_dims = test->dims();
        if (test->count() != reference.count())
            throw DataError("hbt: recordings have different lengths");
    }
    if (x_t0.x < 0 || x_t0.x >= test_dims.width || x_t0.y < 0 || x_t0.y >= test_dims.height)
        throw DataError("hbt: pixel " + std::to_string(x_t0.x) + "," + std::to_string(x_t0.y) +
                        " outside " + std::to_string(test_dims.width) + "x" +
                        std::to_string(test_dims.height));

    const std::string dir = ensure_out_dir(cfg);
    Frame frame(dims), test_frame(test_dims);
    double bucket = 0.0, test_bucket = 0.0;
    std::uint64_t measurements = 0;
    Reconstruction image;
    const auto start = clock_type::now();

    auto next_sample = [&](double& sample) -> bool {
        if (!reference.next(bucket, frame)) return false;
        if (test) {
            if (!test->next(test_bucket, test_frame))
                throw DataError("hbt: test recording ended early");
            sample = test_frame(x_t0.x, x_t0.y);
        } else {
            sample = frame(x_t0.x, x_t0.y);
        }
        return true;
    };

    if (cfg.algorithm == Algorithm::hbt) {
        HbtAccumulator acc(dims);
        double sample = 0.0;
        while (next_sample(sample)) {
            acc.push(sample, frame);
            ++measurements;
        }
        image = acc.snapshot();
    } else {
        StreamingEngine engine(dims, Algorithm::hbt_igi);
        double sample = 0.0;
        while (next_sample(sample)) {
            engine.push(sample, frame);
            ++measurements;
        }
        image = engine.snapshot().image;
    }
    const double elapsed = seconds_since(start);

    // Peak location; ties resolve to the lowest linear index.
    std::size_t peak = 0;
    for (std::size_t p = 1; p < image.values.size(); ++p)
        if (image.values[p] > image.values[peak]) peak = p;
    const int peak_x = int(peak % std::size_t(dims.width));
    const int peak_y = int(peak / std::size_t(dims.width));

    const std::string base = dir + "/" + algorithm_name(cfg.algorithm) + "_final";
    write_reconstruction(base, image,
                         {{"xt0", std::to_string(x_t0.x) + "," + std::to_string(x_t0.y)},
                          {"peak", std::to_string(peak_x) + "," + std::to_string(peak_y)}});
    report_rate("hbt", measurements, elapsed);
    std::printf("hbt: peak at %d,%d; wrote %s.pgm\n", peak_x, peak_y, base.c_str());
}

namespace {

// Roughly geometric sample spacing, always including 1 and M.
std::vector<std::uint64_t> default_sample_points(std::uint64_t measurements) {
    std::vector<std::uint64_t> points;
    const double target = 48.0;
    const double ratio = std::pow(double(measurements), 1.0 / target);
    double v = 1.0;
    for (int i = 0; i <= int(target); ++i) {
        const auto n = std::uint64_t(std::llround(v));
        if (points.empty() || n > points.back()) points.push_back(std::min(n, measurements));
        v *= ratio;
    }
    if (points.back() != measurements) points.push_back(measurements);
    return points;
}

}  // namespace

void run_analyze(const std::string& recording_path, const ExperimentConfig& cfg) {
    RecordingReader reader(recording_path);
    const RecordingHeader& header = reader.header();
    const std::string dir = ensure_out_dir(cfg);

    const std::vector<std::uint64_t> points = default_sample_points(header.measurements);
    const auto start = clock_type::now();
    const GrowthSeries series = growth_series(reader, points);
    const double elapsed = seconds_since(start);

    {
        std::ofstream out(dir + "/growth.csv");
        if (!out) throw DataError("cannot open '" + dir + "/growth.csv' for writing");
        write_growth_csv(out, series);
    }
    const MemoryReport report =
        memory_report(reader.dims(), header.measurements, int(header.pixel_bits));
    {
        std::ofstream out(dir + "/memory.csv");
        if (!out) throw DataError("cannot open '" + dir + "/memory.csv' for writing");
        write_memory_csv(out, reader.dims(), header.measurements, int(header.pixel_bits),
                         report);
    }
    report_rate("analyze", header.measurements, elapsed);
    std::printf("analyze: frame storage %llu bits (all %llu frames) vs %llu bits (one frame)\n",
                static_cast<unsigned long long>(report.gi_bits_total),
                static_cast<unsigned long long>(header.measurements),
                static_cast<unsigned long long>(report.igi_bits_total));
}

void run_compare(const std::string& base_a, const std::string& base_b,
                 const ExperimentConfig& cfg) {
    ImageMeta meta_a;
    const Image2D<double> a = read_scaled_pgm(base_a, &meta_a);
    const Image2D<double> b = read_scaled_pgm(base_b);
    const Reconstruction ra{a, Algorithm::gi, 0, 1.0};
    const Reconstruction rb{b, Algorithm::gi, 0, 1.0};
    const QualityReport q = compare_reconstructions(ra, rb);

    const std::string dir = ensure_out_dir(cfg);
    std::ofstream out(dir + "/quality.csv");
    if (!out) throw DataError("cannot open '" + dir + "/quality.csv' for writing");
    write_quality_csv(out, q);
    std::printf("compare: pearson_r=%.6f nrmsd=%.6f%s\n", q.pearson_r, q.nrmsd,
                q.degenerate ? " (degenerate)" : "");
}

}  // namespace igi
