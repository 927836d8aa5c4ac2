#include "igi/oracles.hpp"

namespace igi {

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::gi: return "gi";
        case Algorithm::igi: return "igi";
        case Algorithm::igi_s: return "igi_s";
        case Algorithm::igi_i: return "igi_i";
        case Algorithm::igi_s_neg: return "igi_s_neg";
        case Algorithm::igi_i_neg: return "igi_i_neg";
        case Algorithm::hbt: return "hbt";
        case Algorithm::hbt_igi: return "hbt_igi";
    }
    return "?";
}

Algorithm parse_algorithm(const std::string& name) {
    for (Algorithm a : {Algorithm::gi, Algorithm::igi, Algorithm::igi_s, Algorithm::igi_i,
                        Algorithm::igi_s_neg, Algorithm::igi_i_neg, Algorithm::hbt,
                        Algorithm::hbt_igi})
        if (name == algorithm_name(a)) return a;
    throw ConfigError("unknown algorithm '" + name + "'");
}

Reconstruction gi_background_subtraction(const MeasurementStream& stream) {
    stream.require_differential();
    const std::size_t pixels = stream.dims.pixels();
    const std::uint64_t m = stream.size();

    std::vector<double> sum_si(pixels, 0.0), sum_i(pixels, 0.0);
    double sum_s = 0.0;
    for (const Measurement& rec : stream.records) {
        const double s = rec.bucket;
        sum_s += s;
        const double* f = rec.frame.data();
        for (std::size_t p = 0; p < pixels; ++p) {
            sum_si[p] += s * f[p];
            sum_i[p] += f[p];
        }
    }

    Reconstruction out{Image2D<double>(stream.dims), Algorithm::gi, m, double(m)};
    const double inv_m = 1.0 / double(m);
    const double mean_s = sum_s * inv_m;
    for (std::size_t p = 0; p < pixels; ++p)
        out.values[p] = sum_si[p] * inv_m - mean_s * (sum_i[p] * inv_m);
    return out;
}

Reconstruction igi_offline(const MeasurementStream& stream) {
    stream.require_differential();
    const std::size_t pixels = stream.dims.pixels();
    const std::uint64_t pairs = stream.size() - 1;

    Reconstruction out{Image2D<double>(stream.dims), Algorithm::igi, pairs, 2.0 * double(pairs)};
    for (std::uint64_t n = 0; n < pairs; ++n) {
        const double ds = stream.records[n + 1].bucket - stream.records[n].bucket;
        const double* cur = stream.records[n + 1].frame.data();
        const double* prev = stream.records[n].frame.data();
        for (std::size_t p = 0; p < pixels; ++p) out.values[p] += ds * (cur[p] - prev[p]);
    }
    const double inv = 1.0 / (2.0 * double(pairs));
    for (std::size_t p = 0; p < pixels; ++p) out.values[p] *= inv;
    return out;
}

std::array<Reconstruction, 4> igi_four_term_expansion(const MeasurementStream& stream) {
    stream.require_differential();
    const std::size_t pixels = stream.dims.pixels();
    const std::uint64_t pairs = stream.size() - 1;
    const double divisor = 2.0 * double(pairs);

    std::array<Reconstruction, 4> terms;
    for (auto& t : terms)
        t = Reconstruction{Image2D<double>(stream.dims), Algorithm::igi, pairs, divisor};

    for (std::uint64_t n = 0; n < pairs; ++n) {
        const double s_next = stream.records[n + 1].bucket;
        const double s_cur = stream.records[n].bucket;
        const double* i_next = stream.records[n + 1].frame.data();
        const double* i_cur = stream.records[n].frame.data();
        for (std::size_t p = 0; p < pixels; ++p) {
            terms[0].values[p] += s_next * i_next[p];
            terms[1].values[p] += s_cur * i_cur[p];
            terms[2].values[p] -= s_next * i_cur[p];
            terms[3].values[p] -= s_cur * i_next[p];
        }
    }
    const double inv = 1.0 / divisor;
    for (auto& t : terms)
        for (std::size_t p = 0; p < pixels; ++p) t.values[p] *= inv;
    return terms;
}

namespace {

void require_hbt_inputs(const std::vector<Frame>& test, const std::vector<Frame>& reference,
                        Pixel x_t0) {
    if (test.size() != reference.size())
        throw DataError("hbt: sequences differ in length (" + std::to_string(test.size()) +
                        " vs " + std::to_string(reference.size()) + ")");
    if (test.size() < 2) throw DataError("hbt: need at least 2 measurements");
    const Dims td = test.front().dims();
    if (x_t0.x < 0 || x_t0.x >= td.width || x_t0.y < 0 || x_t0.y >= td.height)
        throw DataError("hbt: test pixel (" + std::to_string(x_t0.x) + "," +
                        std::to_string(x_t0.y) + ") outside " + std::to_string(td.width) + "x" +
                        std::to_string(td.height));
}

}  // namespace

Reconstruction hbt_offline(const std::vector<Frame>& test, const std::vector<Frame>& reference,
                           Pixel x_t0) {
    require_hbt_inputs(test, reference, x_t0);
    HbtAccumulator acc(reference.front().dims());
    for (std::size_t n = 0; n < test.size(); ++n)
        acc.push(test[n](x_t0.x, x_t0.y), reference[n]);
    return acc.snapshot();
}

Reconstruction hbt_igi_offline(const std::vector<Frame>& test,
                               const std::vector<Frame>& reference, Pixel x_t0) {
    require_hbt_inputs(test, reference, x_t0);
    const Dims dims = reference.front().dims();
    const std::size_t pixels = dims.pixels();
    const std::uint64_t pairs = test.size() - 1;

    Reconstruction out{Image2D<double>(dims), Algorithm::hbt_igi, pairs, 2.0 * double(pairs)};
    for (std::uint64_t n = 0; n < pairs; ++n) {
        const double dt = test[n + 1](x_t0.x, x_t0.y) - test[n](x_t0.x, x_t0.y);
        const double* cur = reference[n + 1].data();
        const double* prev = reference[n].data();
        for (std::size_t p = 0; p < pixels; ++p) out.values[p] += dt * (cur[p] - prev[p]);
    }
    const double inv = 1.0 / (2.0 * double(pairs));
    for (std::size_t p = 0; p < pixels; ++p) out.values[p] *= inv;
    return out;
}

namespace {

Algorithm variant_algorithm(Variant which) {
    switch (which) {
        case Variant::igi_s: return Algorithm::igi_s;
        case Variant::igi_i: return Algorithm::igi_i;
        case Variant::igi_s_neg: return Algorithm::igi_s_neg;
        case Variant::igi_i_neg: return Algorithm::igi_i_neg;
    }
    return Algorithm::igi_s;
}

}  // namespace

Reconstruction variant_offline(const MeasurementStream& stream, Variant which) {
    stream.require_differential();
    const std::size_t pixels = stream.dims.pixels();
    const std::uint64_t pairs = stream.size() - 1;

    Reconstruction out{Image2D<double>(stream.dims), variant_algorithm(which), pairs,
                       double(pairs)};
    for (std::uint64_t n = 0; n < pairs; ++n) {
        const double s_next = stream.records[n + 1].bucket;
        const double s_cur = stream.records[n].bucket;
        const double* i_next = stream.records[n + 1].frame.data();
        const double* i_cur = stream.records[n].frame.data();
        switch (which) {
            case Variant::igi_s: {
                const double ds = s_next - s_cur;
                for (std::size_t p = 0; p < pixels; ++p) out.values[p] += ds * i_next[p];
                break;
            }
            case Variant::igi_i:
                for (std::size_t p = 0; p < pixels; ++p)
                    out.values[p] += s_next * (i_next[p] - i_cur[p]);
                break;
            case Variant::igi_s_neg: {
                const double ds = s_next - s_cur;
                for (std::size_t p = 0; p < pixels; ++p) out.values[p] -= ds * i_cur[p];
                break;
            }
            case Variant::igi_i_neg:
                for (std::size_t p = 0; p < pixels; ++p)
                    out.values[p] -= s_cur * (i_next[p] - i_cur[p]);
                break;
        }
    }
    const double inv = 1.0 / double(pairs);
    for (std::size_t p = 0; p < pixels; ++p) out.values[p] *= inv;
    return out;
}

std::array<Reconstruction, 2> variant_expansion(const MeasurementStream& stream, Variant which) {
    stream.require_differential();
    const std::size_t pixels = stream.dims.pixels();
    const std::uint64_t pairs = stream.size() - 1;
    const double divisor = double(pairs);

    std::array<Reconstruction, 2> terms;
    for (auto& t : terms)
        t = Reconstruction{Image2D<double>(stream.dims), variant_algorithm(which), pairs,
                           divisor};

    for (std::uint64_t n = 0; n < pairs; ++n) {
        const double s_next = stream.records[n + 1].bucket;
        const double s_cur = stream.records[n].bucket;
        const double* i_next = stream.records[n + 1].frame.data();
        const double* i_cur = stream.records[n].frame.data();
        for (std::size_t p = 0; p < pixels; ++p) {
            switch (which) {
                case Variant::igi_s:
                    terms[0].values[p] += s_next * i_next[p];
                    terms[1].values[p] -= s_cur * i_next[p];
                    break;
                case Variant::igi_i:
                    terms[0].values[p] += s_next * i_next[p];
                    terms[1].values[p] -= s_next * i_cur[p];
                    break;
                case Variant::igi_s_neg:
                    terms[0].values[p] += s_cur * i_cur[p];
                    terms[1].values[p] -= s_next * i_cur[p];
                    break;
                case Variant::igi_i_neg:
                    terms[0].values[p] += s_cur * i_cur[p];
                    terms[1].values[p] -= s_cur * i_next[p];
                    break;
            }
        }
    }
    const double inv = 1.0 / divisor;
    for (auto& t : terms)
        for (std::size_t p = 0; p < pixels; ++p) t.values[p] *= inv;
    return terms;
}

GiAccumulator::GiAccumulator(Dims dims)
    : dims_(dims), sum_si_(dims.pixels(), 0.0), sum_i_(dims.pixels(), 0.0) {
    require_valid_dims(dims);
}

void GiAccumulator::push(double bucket, const Frame& frame) {
    require_same_dims(dims_, frame.dims(), "gi accumulator");
    const std::size_t pixels = sum_si_.size();
    const double* f = frame.data();
    sum_s_ += bucket;
    for (std::size_t p = 0; p < pixels; ++p) {
        sum_si_[p] += bucket * f[p];
        sum_i_[p] += f[p];
    }
    ++measurements_;
}

Reconstruction GiAccumulator::snapshot() const {
    Reconstruction out{Image2D<double>(dims_), Algorithm::gi, measurements_,
                       double(std::max<std::uint64_t>(measurements_, 1))};
    if (measurements_ == 0) return out;
    const double inv_m = 1.0 / double(measurements_);
    const double mean_s = sum_s_ * inv_m;
    for (std::size_t p = 0; p < sum_si_.size(); ++p)
        out.values[p] = sum_si_[p] * inv_m - mean_s * (sum_i_[p] * inv_m);
    return out;
}

HbtAccumulator::HbtAccumulator(Dims dims)
    : dims_(dims), sum_tr_(dims.pixels(), 0.0), sum_r_(dims.pixels(), 0.0) {
    require_valid_dims(dims);
}

void HbtAccumulator::push(double test_sample, const Frame& reference) {
    require_same_dims(dims_, reference.dims(), "hbt accumulator");
    const std::size_t pixels = sum_tr_.size();
    const double* f = reference.data();
    sum_t_ += test_sample;
    for (std::size_t p = 0; p < pixels; ++p) {
        sum_tr_[p] += test_sample * f[p];
        sum_r_[p] += f[p];
    }
    ++measurements_;
}

Reconstruction HbtAccumulator::snapshot() const {
    Reconstruction out{Image2D<double>(dims_), Algorithm::hbt, measurements_,
                       double(std::max<std::uint64_t>(measurements_, 1))};
    if (measurements_ == 0) return out;
    const double inv_m = 1.0 / double(measurements_);
    const double mean_t = sum_t_ * inv_m;
    for (std::size_t p = 0; p < sum_tr_.size(); ++p)
        out.values[p] = sum_tr_[p] * inv_m - mean_t * (sum_r_[p] * inv_m);
    return out;
}

}  // namespace igi
