#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <vector>

#include "igi/pgm.hpp"
#include "igi/speckle.hpp"

using namespace igi;

TEST_CASE("config validation") {
    FieldConfig bad;
    bad.width = 0;
    CHECK_THROWS_AS(generate_frame(bad, 1), ConfigError);
    bad = FieldConfig{};
    bad.mean_intensity = 0.0;
    CHECK_THROWS_AS(generate_frame(bad, 1), ConfigError);
    CHECK_THROWS_AS(generate_frame(FieldConfig{}, 0), ConfigError);

    DetectorConfig det;
    det.quant_bits = 17;
    CHECK_THROWS_AS(det.validate(), ConfigError);
}

TEST_CASE("same config and index give bit-identical frames") {
    FieldConfig cfg;
    cfg.width = 20;
    cfg.height = 10;
    cfg.grain_radius = 2.0;
    cfg.seed = 77;
    CHECK(generate_frame(cfg, 5).intensities == generate_frame(cfg, 5).intensities);
    CHECK(generate_frame(cfg, 5).intensities != generate_frame(cfg, 6).intensities);
    cfg.seed = 78;
    CHECK(generate_frame(FieldConfig{20, 10, 2.0, 1.0, 77}, 5).intensities !=
          generate_frame(cfg, 5).intensities);
}

TEST_CASE("grain 0 gives unit-mean negative-exponential intensities") {
    FieldConfig cfg;
    cfg.width = 4;
    cfg.height = 4;
    cfg.grain_radius = 0.0;
    cfg.mean_intensity = 1.0;
    cfg.seed = 7;

    const std::uint64_t frames = 100000;
    double sum = 0.0, sumsq = 0.0;
    std::uint64_t below_mean = 0;
    for (std::uint64_t n = 1; n <= frames; ++n) {
        const SpeckleFrame f = generate_frame(cfg, n);
        for (std::size_t p = 0; p < f.intensities.size(); ++p) {
            const double v = f.intensities[p];
            CHECK(v >= 0.0);
            sum += v;
            sumsq += v * v;
            if (v < 1.0) ++below_mean;
        }
    }
    const double samples = double(frames) * 16.0;
    const double mean = sum / samples;
    const double var = sumsq / samples - mean * mean;
    CHECK(std::abs(mean - 1.0) <= 0.01);
    // Exponential: var = mean^2 and P(X < mean) = 1 - 1/e.
    CHECK(var / (mean * mean) == doctest::Approx(1.0).epsilon(0.05));
    CHECK(double(below_mean) / samples == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(0.01));
}

TEST_CASE("filtered speckle keeps contrast 1 and the grain-scale correlation") {
    FieldConfig cfg;
    cfg.width = 64;
    cfg.height = 64;
    cfg.grain_radius = 3.0;
    cfg.mean_intensity = 2.5;
    cfg.seed = 11;

    const int frames = 300;
    const int lag = int(cfg.grain_radius);
    double sum = 0.0, sumsq = 0.0, cross_lag = 0.0, cross_far = 0.0;
    std::uint64_t count = 0, cross_count = 0;
    for (int n = 1; n <= frames; ++n) {
        const SpeckleFrame f = generate_frame(cfg, std::uint64_t(n));
        for (int y = 0; y < cfg.height; ++y)
            for (int x = 0; x < cfg.width; ++x) {
                const double v = f.intensities(x, y);
                sum += v;
                sumsq += v * v;
                ++count;
                const double w = f.intensities((x + lag) % cfg.width, y);
                const double far = f.intensities((x + 4 * lag) % cfg.width, y);
                cross_lag += v * w;
                cross_far += v * far;
                ++cross_count;
            }
    }
    const double mean = sum / double(count);
    const double var = sumsq / double(count) - mean * mean;
    CHECK(mean == doctest::Approx(cfg.mean_intensity).epsilon(0.02));
    CHECK(var / (mean * mean) == doctest::Approx(1.0).epsilon(0.05));

    // Normalized intensity covariance ~ exp(-d^2 / r^2): 1/e at one grain
    // radius, negligible at four.
    const double corr_lag = (cross_lag / double(cross_count) - mean * mean) / var;
    const double corr_far = (cross_far / double(cross_count) - mean * mean) / var;
    CHECK(corr_lag == doctest::Approx(std::exp(-1.0)).epsilon(0.25));
    CHECK(std::abs(corr_far) < 0.05);
}

TEST_CASE("bucket signal sums masked intensities") {
    SpeckleFrame frame{Frame({2, 2}), 1};
    frame.intensities(0, 0) = 1;
    frame.intensities(1, 0) = 2;
    frame.intensities(0, 1) = 3;
    frame.intensities(1, 1) = 4;

    ObjectMask mask{Image2D<double>({2, 2}, 0.0), "diag"};
    mask.transmissivity(0, 0) = 1;
    mask.transmissivity(1, 1) = 1;
    CHECK(bucket_signal(frame, mask) == 5.0);

    ObjectMask zeros{Image2D<double>({2, 2}, 0.0), "zeros"};
    CHECK(bucket_signal(frame, zeros) == 0.0);

    ObjectMask ones{Image2D<double>({2, 2}, 1.0), "ones"};
    CHECK(bucket_signal(frame, ones) == 10.0);

    ObjectMask wrong{Image2D<double>({3, 2}, 1.0), "wrong"};
    CHECK_THROWS_AS(bucket_signal(frame, wrong), DataError);
}

TEST_CASE("bucket signal is linear in frame and mask") {
    FieldConfig cfg;
    cfg.width = 8;
    cfg.height = 8;
    cfg.seed = 3;
    const SpeckleFrame a = generate_frame(cfg, 1);
    const SpeckleFrame b = generate_frame(cfg, 2);
    ObjectMask mask{Image2D<double>({8, 8}, 0.0), "half"};
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 8; ++y) mask.transmissivity(x, y) = 1.0;

    SpeckleFrame combo{Frame({8, 8}), 3};
    for (std::size_t p = 0; p < combo.intensities.size(); ++p)
        combo.intensities[p] = 2.0 * a.intensities[p] + 0.5 * b.intensities[p];
    CHECK(bucket_signal(combo, mask) ==
          doctest::Approx(2.0 * bucket_signal(a, mask) + 0.5 * bucket_signal(b, mask))
              .epsilon(1e-12));
}

TEST_CASE("quantization follows the documented scaling and rounding") {
    FieldConfig cfg;
    cfg.width = 3;
    cfg.height = 1;
    cfg.mean_intensity = 2.0;
    cfg.seed = 5;
    DetectorConfig det;
    det.quant_bits = 8;
    det.noise_sigma = 0.0;

    // mean -> mid-range code 128; scale = 64 codes per unit.
    SpeckleFrame frame{Frame({3, 1}), 1};
    frame.intensities(0, 0) = 2.0;
    frame.intensities(1, 0) = 0.0;
    frame.intensities(2, 0) = 100.0;  // saturates
    const SpeckleFrame q = quantize_frame(frame, cfg, det, 1);
    CHECK(q.intensities(0, 0) == 128.0);
    CHECK(q.intensities(1, 0) == 0.0);
    CHECK(q.intensities(2, 0) == 255.0);

    // Exact code boundary rounds half-up: 1.5 codes -> 2.
    frame.intensities(0, 0) = 1.5 / 64.0;
    CHECK(quantize_frame(frame, cfg, det, 1).intensities(0, 0) == 2.0);

    // All-zero frame stays all-zero.
    SpeckleFrame dark{Frame({3, 1}, 0.0), 1};
    const SpeckleFrame qd = quantize_frame(dark, cfg, det, 1);
    for (std::size_t p = 0; p < qd.intensities.size(); ++p) CHECK(qd.intensities[p] == 0.0);

    // Uniform frame at the mean maps to mid-range everywhere.
    SpeckleFrame uniform{Frame({3, 1}, cfg.mean_intensity), 1};
    const SpeckleFrame qu = quantize_frame(uniform, cfg, det, 1);
    for (std::size_t p = 0; p < qu.intensities.size(); ++p) CHECK(qu.intensities[p] == 128.0);
}

TEST_CASE("quantization noise is deterministic and channel-separated") {
    FieldConfig cfg;
    cfg.width = 6;
    cfg.height = 6;
    cfg.seed = 9;
    DetectorConfig det;
    det.noise_sigma = 0.3;
    const SpeckleFrame frame = generate_frame(cfg, 4);
    const SpeckleFrame a = quantize_frame(frame, cfg, det, 4, 0);
    const SpeckleFrame b = quantize_frame(frame, cfg, det, 4, 0);
    const SpeckleFrame c = quantize_frame(frame, cfg, det, 4, 1);
    CHECK(a.intensities == b.intensities);
    CHECK(a.intensities != c.intensities);
}

TEST_CASE("mask specs build the documented shapes") {
    const Dims dims{40, 28};

    const ObjectMask full = make_object_mask(parse_mask_spec("rect"), dims);
    for (std::size_t p = 0; p < full.transmissivity.size(); ++p)
        CHECK(full.transmissivity[p] == 1.0);

    const ObjectMask point = make_object_mask(parse_mask_spec("disk:5,6,0"), dims);
    double total = 0.0;
    for (std::size_t p = 0; p < point.transmissivity.size(); ++p)
        total += point.transmissivity[p];
    CHECK(total == 1.0);
    CHECK(point.transmissivity(5, 6) == 1.0);

    const ObjectMask glyph = make_object_mask(parse_mask_spec("th"), {400, 280});
    double fg = 0.0;
    for (std::size_t p = 0; p < glyph.transmissivity.size(); ++p) {
        const double v = glyph.transmissivity[p];
        CHECK((v == 0.0 || v == 1.0));
        fg += v;
    }
    const double fraction = fg / double(glyph.transmissivity.size());
    CHECK(fraction > 0.0);
    CHECK(fraction < 1.0);

    CHECK_THROWS_AS(parse_mask_spec("blob"), ConfigError);
    CHECK_THROWS_AS(parse_mask_spec("disk:1,2"), ConfigError);
    CHECK_THROWS_AS(make_object_mask(parse_mask_spec("pgm:/no/such/file.pgm"), dims), DataError);
}

TEST_CASE("pgm masks round-trip through the threshold") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "igi_mask_test";
    fs::create_directories(dir);
    const std::string path = (dir / "mask.pgm").string();

    Image2D<std::uint8_t> img({5, 4});
    for (std::size_t p = 0; p < img.size(); ++p) img[p] = std::uint8_t(p * 13 % 256);
    write_pgm(path, img);

    const ObjectMask mask = make_object_mask(parse_mask_spec("pgm:" + path), {5, 4});
    for (std::size_t p = 0; p < img.size(); ++p)
        CHECK(mask.transmissivity[p] == (img[p] > 127 ? 1.0 : 0.0));
    fs::remove_all(dir);
}
