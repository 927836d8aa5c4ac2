#include <doctest.h>

#include <cmath>
#include <random>

#include "igi/oracles.hpp"
#include "igi/speckle.hpp"
#include "test_util.hpp"

using namespace igi;

namespace {

// Single-pixel stream helper.
MeasurementStream pixel_stream(std::initializer_list<std::pair<double, double>> records) {
    MeasurementStream stream;
    stream.dims = {1, 1};
    for (const auto& [s, i] : records) {
        Frame f({1, 1});
        f[0] = i;
        stream.push(s, std::move(f));
    }
    return stream;
}

const MeasurementStream fixture = pixel_stream({{1, 2}, {3, 4}, {2, 1}});

}  // namespace

TEST_CASE("background subtraction on the hand-checked fixture") {
    const Reconstruction g = gi_background_subtraction(fixture);
    CHECK(g.values[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(g.n_used == 3);
    CHECK(g.normalization == 3.0);

    MeasurementStream one = pixel_stream({{1, 2}});
    CHECK_THROWS_AS(gi_background_subtraction(one), DataError);
}

TEST_CASE("igi offline on the hand-checked fixture") {
    const Reconstruction g = igi_offline(fixture);
    CHECK(g.values[0] == doctest::Approx(7.0 / 4.0).epsilon(1e-12));
    CHECK(g.n_used == 2);
    CHECK(g.normalization == 4.0);
}

TEST_CASE("igi with two measurements is the single-pair product") {
    const MeasurementStream two = pixel_stream({{1, 2}, {4, 7}});
    const Reconstruction g = igi_offline(two);
    CHECK(g.values[0] == doctest::Approx(0.5 * (4 - 1) * (7 - 2)).epsilon(1e-12));
}

TEST_CASE("constant streams reconstruct to zero") {
    const MeasurementStream flat = pixel_stream({{2, 5}, {2, 5}, {2, 5}, {2, 5}});
    CHECK(gi_background_subtraction(flat).values[0] == doctest::Approx(0.0));
    CHECK(igi_offline(flat).values[0] == doctest::Approx(0.0));
    for (const Variant v :
         {Variant::igi_s, Variant::igi_i, Variant::igi_s_neg, Variant::igi_i_neg})
        CHECK(variant_offline(flat, v).values[0] == doctest::Approx(0.0));
}

TEST_CASE("spatially flat frames give a flat reconstruction") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(0.0, 4.0);
    MeasurementStream stream;
    stream.dims = {5, 3};
    for (int n = 0; n < 20; ++n) {
        Frame f({5, 3});
        const double level = dist(rng);
        for (std::size_t p = 0; p < f.size(); ++p) f[p] = level;
        stream.push(dist(rng), std::move(f));
    }
    const Reconstruction g = gi_background_subtraction(stream);
    for (std::size_t p = 1; p < g.values.size(); ++p)
        CHECK(g.values[p] == doctest::Approx(g.values[0]).epsilon(1e-12));
}

TEST_CASE("four-term expansion sums to the differential estimator") {
    const auto terms = igi_four_term_expansion(fixture);
    CHECK(terms[0].values[0] == doctest::Approx(3.5).epsilon(1e-12));
    CHECK(terms[1].values[0] == doctest::Approx(3.5).epsilon(1e-12));
    CHECK(terms[2].values[0] == doctest::Approx(-3.5).epsilon(1e-12));
    CHECK(terms[3].values[0] == doctest::Approx(-7.0 / 4.0).epsilon(1e-12));

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const Dims dims{int(rng() % 8 + 1), int(rng() % 8 + 1)};
        const MeasurementStream stream = test::random_stream(rng, dims, rng() % 63 + 2);
        const Reconstruction direct = igi_offline(stream);
        const auto expansion = igi_four_term_expansion(stream);
        CHECK(test::expansion_deviation(expansion, direct) < 1e-12);
    }
}

TEST_CASE("variants on the hand-checked fixture") {
    CHECK(variant_offline(fixture, Variant::igi_s).values[0] ==
          doctest::Approx(3.5).epsilon(1e-12));
    CHECK(variant_offline(fixture, Variant::igi_i).values[0] ==
          doctest::Approx(0.0));
    // Negated forms, by hand: -(1/2)[(2)(2) + (-1)(4)] = 0 and
    // -(1/2)[(1)(2) + (3)(-3)] = 7/2.
    CHECK(variant_offline(fixture, Variant::igi_s_neg).values[0] ==
          doctest::Approx(0.0));
    CHECK(variant_offline(fixture, Variant::igi_i_neg).values[0] ==
          doctest::Approx(3.5).epsilon(1e-12));
}

TEST_CASE("variant two-term expansions match the differential route") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const Dims dims{int(rng() % 6 + 1), int(rng() % 6 + 1)};
        const MeasurementStream stream = test::random_stream(rng, dims, rng() % 60 + 2);
        for (const Variant v :
             {Variant::igi_s, Variant::igi_i, Variant::igi_s_neg, Variant::igi_i_neg}) {
            const Reconstruction direct = variant_offline(stream, v);
            const auto terms = variant_expansion(stream, v);
            CHECK(test::expansion_deviation(terms, direct) < 1e-12);
        }
    }
}

TEST_CASE("adding a constant to every bucket changes nothing") {
    std::mt19937_64 rng(31);
    const MeasurementStream stream = test::random_stream(rng, {4, 4}, 40);
    MeasurementStream shifted = stream;
    const double c = 123.456;
    for (Measurement& rec : shifted.records) rec.bucket += c;

    CHECK(test::max_rel_diff(gi_background_subtraction(stream).values.span(),
                             gi_background_subtraction(shifted).values.span()) < 1e-10);
    CHECK(test::max_rel_diff(igi_offline(stream).values.span(),
                             igi_offline(shifted).values.span()) < 1e-10);
    CHECK(test::max_rel_diff(variant_offline(stream, Variant::igi_s).values.span(),
                             variant_offline(shifted, Variant::igi_s).values.span()) < 1e-10);
    CHECK(test::max_rel_diff(variant_offline(stream, Variant::igi_s_neg).values.span(),
                             variant_offline(shifted, Variant::igi_s_neg).values.span()) <
          1e-10);

    // igi_i multiplies frames by the raw bucket, so the shift survives as
    // the telescoped boundary term c (I_M - I_1) / N exactly; it only
    // vanishes in expectation.
    const std::uint64_t pairs = stream.size() - 1;
    const Reconstruction base = variant_offline(stream, Variant::igi_i);
    const Reconstruction moved = variant_offline(shifted, Variant::igi_i);
    const Frame& first = stream.records.front().frame;
    const Frame& last = stream.records.back().frame;
    for (std::size_t p = 0; p < base.values.size(); ++p) {
        const double boundary = c * (last[p] - first[p]) / double(pairs);
        CHECK(moved.values[p] == doctest::Approx(base.values[p] + boundary).epsilon(1e-10));
    }
}

TEST_CASE("oracles are linear in the reference frames") {
    std::mt19937_64 rng(37);
    const MeasurementStream a = test::random_stream(rng, {3, 3}, 25);
    MeasurementStream b = a;  // same buckets, different frames
    std::uniform_real_distribution<double> dist(0.0, 10.0);
    for (Measurement& rec : b.records)
        for (std::size_t p = 0; p < rec.frame.size(); ++p) rec.frame[p] = dist(rng);

    MeasurementStream combo = a;
    for (std::size_t n = 0; n < combo.records.size(); ++n)
        for (std::size_t p = 0; p < combo.records[n].frame.size(); ++p)
            combo.records[n].frame[p] =
                1.5 * a.records[n].frame[p] + 0.25 * b.records[n].frame[p];

    const Reconstruction ga = igi_offline(a), gb = igi_offline(b), gc = igi_offline(combo);
    for (std::size_t p = 0; p < gc.values.size(); ++p)
        CHECK(gc.values[p] ==
              doctest::Approx(1.5 * ga.values[p] + 0.25 * gb.values[p]).epsilon(1e-10));
}

TEST_CASE("cross-term averages factorize as N grows (independence check)") {
    // RMS of (1/N) sum S_{n+1} I_n - mean(S) mean(I) over an ensemble of
    // independent single-pixel streams should fall roughly as 1/sqrt(N).
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    auto ensemble_rms = [&](std::uint64_t n_pairs) {
        const int repeats = 160;
        double sq = 0.0;
        for (int r = 0; r < repeats; ++r) {
            std::vector<double> s(n_pairs + 1), i(n_pairs + 1);
            for (auto& v : s) v = dist(rng);
            for (auto& v : i) v = dist(rng);
            double cross = 0.0, ms = 0.0, mi = 0.0;
            for (std::uint64_t n = 0; n < n_pairs; ++n) {
                cross += s[n + 1] * i[n];
                ms += s[n];
                mi += i[n];
            }
            const double dev = cross / double(n_pairs) -
                               (ms / double(n_pairs)) * (mi / double(n_pairs));
            sq += dev * dev;
        }
        return std::sqrt(sq / repeats);
    };
    const double rms_small = ensemble_rms(250);
    const double rms_large = ensemble_rms(4000);
    // 1/sqrt(16) = 0.25; allow slack for ensemble noise.
    CHECK(rms_large < 0.5 * rms_small);
}

TEST_CASE("hbt peaks at the test pixel for identical arms") {
    std::mt19937_64 rng(43);
    std::vector<Frame> frames;
    const Dims dims{9, 7};
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int n = 0; n < 400; ++n) {
        Frame f(dims);
        for (std::size_t p = 0; p < f.size(); ++p) f[p] = dist(rng);
        frames.push_back(std::move(f));
    }
    const Pixel x_t0{4, 3};
    const Reconstruction hbt = hbt_offline(frames, frames, x_t0);
    std::size_t peak = 0;
    for (std::size_t p = 1; p < hbt.values.size(); ++p)
        if (hbt.values[p] > hbt.values[peak]) peak = p;
    CHECK(int(peak % 9) == x_t0.x);
    CHECK(int(peak / 9) == x_t0.y);

    CHECK_THROWS_AS(hbt_offline(frames, frames, Pixel{9, 0}), DataError);
    std::vector<Frame> shorter(frames.begin(), frames.begin() + 10);
    CHECK_THROWS_AS(hbt_offline(frames, shorter, x_t0), DataError);
}

TEST_CASE("hbt peak height matches the speckle contrast") {
    // For thermal speckle the zero-lag covariance is <I>^2 (g2 - 1 = 1), so
    // the correlation peak over the squared mean should sit at 1.
    FieldConfig cfg;
    cfg.width = 16;
    cfg.height = 16;
    cfg.grain_radius = 2.0;
    cfg.mean_intensity = 1.5;
    cfg.seed = 4711;
    std::vector<Frame> frames;
    for (int n = 1; n <= 6000; ++n) frames.push_back(generate_frame(cfg, n).intensities);

    const Pixel x_t0{8, 8};
    const Reconstruction hbt = hbt_offline(frames, frames, x_t0);
    double mean = 0.0;
    for (const Frame& f : frames) mean += f(x_t0.x, x_t0.y);
    mean /= double(frames.size());
    CHECK(hbt.values(x_t0.x, x_t0.y) / (mean * mean) == doctest::Approx(1.0).epsilon(0.10));

    // Pixels far outside the grain sit near zero relative to the peak.
    CHECK(std::abs(hbt.values(0, 0)) < 0.1 * hbt.values(x_t0.x, x_t0.y));
}

TEST_CASE("cross-term factorization also holds for correlated pixels") {
    // Within a frame, neighbouring pixels are correlated; across frames the
    // products I_{n+1}(x_t) I_n(x_r) must still factorize, with the sample
    // deviation falling roughly as 1/sqrt(N).
    FieldConfig cfg;
    cfg.width = 16;
    cfg.height = 16;
    cfg.grain_radius = 2.0;
    cfg.mean_intensity = 1.0;
    const Pixel xt{8, 8}, xr{9, 8};

    auto ensemble_rms = [&](std::uint64_t pairs, std::uint64_t seed_base) {
        const int repeats = 12;
        double sq = 0.0;
        for (int r = 0; r < repeats; ++r) {
            FieldConfig run = cfg;
            run.seed = seed_base + std::uint64_t(r);
            double cross = 0.0, mean_next_t = 0.0, mean_r = 0.0;
            double prev_r = 0.0;
            for (std::uint64_t n = 1; n <= pairs + 1; ++n) {
                const SpeckleFrame f = generate_frame(run, n);
                const double t = f.intensities(xt.x, xt.y);
                const double rr = f.intensities(xr.x, xr.y);
                if (n > 1) {
                    cross += t * prev_r;
                    mean_next_t += t;
                }
                if (n <= pairs) mean_r += rr;
                prev_r = rr;
            }
            const double inv = 1.0 / double(pairs);
            const double dev = cross * inv - (mean_next_t * inv) * (mean_r * inv);
            sq += dev * dev;
        }
        return std::sqrt(sq / repeats);
    };

    const double rms_small = ensemble_rms(200, 1000);
    const double rms_large = ensemble_rms(3200, 2000);
    // 1/sqrt(16) = 0.25; generous slack for the 12-run ensemble.
    CHECK(rms_large < 0.6 * rms_small);
}

TEST_CASE("hbt differential oracle on hand-checked sequences") {
    // Single pixel, test (2,4,1), reference (1,5,2): (1/4)[(2)(4)+(-3)(-3)].
    std::vector<Frame> test_seq, ref_seq;
    for (const double v : {2.0, 4.0, 1.0}) {
        Frame f({1, 1});
        f[0] = v;
        test_seq.push_back(std::move(f));
    }
    for (const double v : {1.0, 5.0, 2.0}) {
        Frame f({1, 1});
        f[0] = v;
        ref_seq.push_back(std::move(f));
    }
    const Reconstruction g = hbt_igi_offline(test_seq, ref_seq, {0, 0});
    CHECK(g.values[0] == doctest::Approx(17.0 / 4.0).epsilon(1e-12));

    // Constant frames give zero for both estimators.
    std::vector<Frame> flat(5, Frame({2, 2}, 3.0));
    const Reconstruction h1 = hbt_offline(flat, flat, {1, 1});
    const Reconstruction h2 = hbt_igi_offline(flat, flat, {1, 1});
    for (std::size_t p = 0; p < 4; ++p) {
        CHECK(h1.values[p] == doctest::Approx(0.0));
        CHECK(h2.values[p] == doctest::Approx(0.0));
    }
}

TEST_CASE("streaming gi accumulator is bit-identical to the batch oracle") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 10; ++trial) {
        const Dims dims{int(rng() % 7 + 1), int(rng() % 7 + 1)};
        const MeasurementStream stream = test::random_stream(rng, dims, rng() % 100 + 2);
        GiAccumulator acc(dims);
        for (const Measurement& rec : stream.records) acc.push(rec.bucket, rec.frame);
        const Reconstruction batch = gi_background_subtraction(stream);
        const Reconstruction online = acc.snapshot();
        CHECK(online.values == batch.values);
    }
}

TEST_CASE("algorithm names round-trip") {
    for (const Algorithm a : {Algorithm::gi, Algorithm::igi, Algorithm::igi_s, Algorithm::igi_i,
                              Algorithm::igi_s_neg, Algorithm::igi_i_neg, Algorithm::hbt,
                              Algorithm::hbt_igi})
        CHECK(parse_algorithm(algorithm_name(a)) == a);
    CHECK_THROWS_AS(parse_algorithm("dgi"), ConfigError);
}
