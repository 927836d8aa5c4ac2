#include "igi/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace igi {

const char* stage_name(Stage s) {
    switch (s) {
        case Stage::input: return "input";
        case Stage::difference: return "difference";
        case Stage::product: return "product";
        case Stage::accumulate: return "accumulate";
    }
    return "?";
}

void FixedPointConfig::validate() const {
    for (int bits : {s_bits, i_bits, g_bits})
        if (bits < 2 || bits > 64)
            throw ConfigError("fixed-point register widths must be in [2, 64], got " +
                              std::to_string(bits));
}

OverflowPolicy parse_overflow_policy(const std::string& name) {
    if (name == "error") return OverflowPolicy::error;
    if (name == "saturate") return OverflowPolicy::saturate;
    throw ConfigError("unknown overflow policy '" + name + "'");
}

const char* overflow_policy_name(OverflowPolicy p) {
    return p == OverflowPolicy::error ? "error" : "saturate";
}

namespace {

void require_engine_algorithm(Algorithm a) {
    switch (a) {
        case Algorithm::igi:
        case Algorithm::igi_s:
        case Algorithm::igi_i:
        case Algorithm::hbt_igi: return;
        default:
            throw ConfigError(std::string("algorithm '") + algorithm_name(a) +
                              "' has no streaming engine");
    }
}

}  // namespace

StreamingEngine::StreamingEngine(Dims dims, Algorithm algorithm, kernels::Exec exec)
    : dims_(dims),
      algorithm_(algorithm),
      mode_(EngineMode::float64),
      exec_(exec),
      ri_f_(dims.pixels(), 0.0),
      rg_f_(dims.pixels(), 0.0) {
    require_valid_dims(dims);
    require_engine_algorithm(algorithm);
}

StreamingEngine::StreamingEngine(Dims dims, Algorithm algorithm, const FixedPointConfig& fp)
    : dims_(dims),
      algorithm_(algorithm),
      mode_(EngineMode::fixed_point),
      fp_(fp),
      ri_i_(dims.pixels(), 0),
      rg_i_(dims.pixels(), 0) {
    require_valid_dims(dims);
    require_engine_algorithm(algorithm);
    fp.validate();
}

void StreamingEngine::push(double bucket, const Frame& frame) {
    require_same_dims(dims_, frame.dims(), "engine push");
    if (mode_ == EngineMode::float64)
        push_float(bucket, frame);
    else
        push_fixed(bucket, frame);
    ++pushes_;
}

void StreamingEngine::push_float(double bucket, const Frame& frame) {
    const std::size_t pixels = dims_.pixels();
    if (pushes_ == 0) {
        rs_f_ = bucket;
        for (std::size_t p = 0; p < pixels; ++p) ri_f_[p] = frame[p];
        return;
    }
    // Fused update + register overwrite, one pass over the image.
    switch (algorithm_) {
        case Algorithm::igi:
        case Algorithm::hbt_igi:
            kernels::accumulate_diff_product_store(exec_, rg_f_, frame.span(), ri_f_,
                                                   bucket - rs_f_);
            break;
        case Algorithm::igi_s:
            kernels::accumulate_scaled_store(exec_, rg_f_, frame.span(), ri_f_,
                                             bucket - rs_f_);
            break;
        case Algorithm::igi_i:
            kernels::accumulate_diff_product_store(exec_, rg_f_, frame.span(), ri_f_, bucket);
            break;
        default: break;
    }
    rs_f_ = bucket;
}

std::int64_t StreamingEngine::check_input(double value, std::int64_t max_value,
                                          std::int64_t pixel) {
    const std::uint64_t measurement = pushes_ + 1;
    if (!(std::floor(value) == value) || !std::isfinite(value))
        throw DataError("fixed-point engine needs integral inputs, got " +
                        std::to_string(value) + " at measurement " +
                        std::to_string(measurement));
    if (value < 0.0 || value > double(max_value)) {
        if (fp_.policy == OverflowPolicy::error)
            throw OverflowError(Stage::input, pixel, measurement,
                                "fixed-point overflow at stage input: value " +
                                    std::to_string(std::int64_t(value)) + " outside [0, " +
                                    std::to_string(max_value) + "] at pixel " +
                                    std::to_string(pixel) + ", measurement " +
                                    std::to_string(measurement));
        ++overflow_count_;
        return value < 0.0 ? 0 : max_value;
    }
    return std::int64_t(value);
}

void StreamingEngine::accumulate_fixed(__int128 update, std::size_t pixel) {
    // Exact in __int128; only the writeback to the g_bits register can
    // leave the declared range.
    const __int128 sum = __int128(rg_i_[pixel]) + update;
    if (sum < __int128(fp_.g_min()) || sum > __int128(fp_.g_max())) {
        if (fp_.policy == OverflowPolicy::error)
            throw OverflowError(Stage::accumulate, std::int64_t(pixel), pushes_ + 1,
                                "fixed-point overflow at stage accumulate: pixel " +
                                    std::to_string(pixel) + ", measurement " +
                                    std::to_string(pushes_ + 1) + ": accumulator " +
                                    std::to_string(double(sum)) + " outside [" +
                                    std::to_string(fp_.g_min()) + ", " +
                                    std::to_string(fp_.g_max()) + "]");
        ++overflow_count_;
        rg_i_[pixel] = sum < 0 ? fp_.g_min() : fp_.g_max();
        return;
    }
    rg_i_[pixel] = std::int64_t(sum);
}

void StreamingEngine::push_fixed(double bucket, const Frame& frame) {
    const std::size_t pixels = dims_.pixels();
    const std::uint64_t measurement = pushes_ + 1;

    const std::int64_t s = check_input(bucket, fp_.s_max(), -1);
    if (pushes_ == 0) {
        rs_i_ = s;
        for (std::size_t p = 0; p < pixels; ++p)
            ri_i_[p] = check_input(frame[p], fp_.i_max(), std::int64_t(p));
        return;
    }

    // Differences of two in-range unsigned values are exact in width + 1
    // bits; products in the sum of operand widths. Both are re-checked so a
    // violation is reported at the stage where it arises.
    const std::int64_t ds = s - rs_i_;
    const std::int64_t diff_s_limit = fp_.s_max();  // |d| <= max for unsigned inputs
    if (ds < -diff_s_limit || ds > diff_s_limit)
        throw OverflowError(Stage::difference, -1, measurement,
                            "fixed-point overflow at stage difference (bucket), measurement " +
                                std::to_string(measurement));

    const bool scale_by_bucket = algorithm_ == Algorithm::igi_i;
    const std::int64_t factor = scale_by_bucket ? s : ds;

    for (std::size_t p = 0; p < pixels; ++p) {
        const std::int64_t cur = check_input(frame[p], fp_.i_max(), std::int64_t(p));
        std::int64_t operand;
        switch (algorithm_) {
            case Algorithm::igi:
            case Algorithm::hbt_igi:
            case Algorithm::igi_i: {
                const std::int64_t di = cur - ri_i_[p];
                const std::int64_t diff_i_limit = fp_.i_max();
                if (di < -diff_i_limit || di > diff_i_limit)
                    throw OverflowError(Stage::difference, std::int64_t(p), measurement,
                                        "fixed-point overflow at stage difference, pixel " +
                                            std::to_string(p) + ", measurement " +
                                            std::to_string(measurement));
                operand = di;
                break;
            }
            default:  // igi_s uses the raw frame value
                operand = cur;
                break;
        }

        const __int128 product = __int128(factor) * __int128(operand);
        const int product_width = std::min(fp_.s_bits + fp_.i_bits + 1, 126);
        const __int128 product_limit = __int128(1) << product_width;
        if (product < -product_limit || product > product_limit)
            throw OverflowError(Stage::product, std::int64_t(p), measurement,
                                "fixed-point overflow at stage product, pixel " +
                                    std::to_string(p) + ", measurement " +
                                    std::to_string(measurement));

        accumulate_fixed(product, p);
        ri_i_[p] = cur;
    }
    rs_i_ = s;
}

Snapshot StreamingEngine::snapshot() const {
    const std::size_t pixels = dims_.pixels();
    const std::uint64_t n_pairs = pairs();
    const bool half = algorithm_ == Algorithm::igi || algorithm_ == Algorithm::hbt_igi;
    const double divisor = n_pairs == 0 ? 1.0 : (half ? 2.0 * double(n_pairs) : double(n_pairs));

    Snapshot snap;
    snap.n_pairs = n_pairs;
    snap.overflow_count = overflow_count_;
    snap.image = Reconstruction{Image2D<double>(dims_), algorithm_, n_pairs, divisor};
    if (n_pairs == 0) return snap;

    const double inv = 1.0 / divisor;
    if (mode_ == EngineMode::float64) {
        for (std::size_t p = 0; p < pixels; ++p) snap.image.values[p] = rg_f_[p] * inv;
    } else {
        for (std::size_t p = 0; p < pixels; ++p) snap.image.values[p] = double(rg_i_[p]) * inv;
    }
    return snap;
}

MemoryFootprint StreamingEngine::footprint() const {
    MemoryFootprint fp;
    const std::uint64_t pixels = dims_.pixels();
    if (mode_ == EngineMode::float64) {
        fp.bucket_register_bits = 64;
        fp.reference_register_bits = pixels * 64;
        fp.accumulator_register_bits = pixels * 64;
    } else {
        fp.bucket_register_bits = std::uint64_t(fp_.s_bits);
        fp.reference_register_bits = pixels * std::uint64_t(fp_.i_bits);
        fp.accumulator_register_bits = pixels * std::uint64_t(fp_.g_bits);
    }
    fp.counter_bits = 64;
    return fp;
}

std::vector<double> StreamingEngine::raw_accumulator() const {
    std::vector<double> out(dims_.pixels());
    if (mode_ == EngineMode::float64) {
        out = rg_f_;
    } else {
        for (std::size_t p = 0; p < out.size(); ++p) out[p] = double(rg_i_[p]);
    }
    return out;
}

RunResult engine_run(RecordSource& source, StreamingEngine& engine,
                     std::uint64_t snapshot_every) {
    if (snapshot_every < 1) throw ConfigError("snapshot cadence must be >= 1");
    require_same_dims(source.dims(), engine.dims(), "engine run");

    RunResult result;
    Frame frame(source.dims());
    double bucket = 0.0;

    const auto start = std::chrono::steady_clock::now();
    while (source.next(bucket, frame)) {
        engine.push(bucket, frame);
        ++result.measurements;
        if (result.measurements % snapshot_every == 0)
            result.intermediates.push_back(engine.snapshot());
    }
    result.final = engine.snapshot();
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace igi
