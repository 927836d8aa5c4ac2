#pragma once

#include <cstdint>
#include <vector>

#include "igi/fixed_point.hpp"
#include "igi/kernels.hpp"
#include "igi/oracles.hpp"
#include "igi/stream.hpp"

namespace igi {

enum class EngineMode { float64, fixed_point };

// Exact register budget of an engine. Independent of how many measurements
// have been absorbed; the counter is a fixed 64-bit register.
struct MemoryFootprint {
    std::uint64_t bucket_register_bits = 0;     // R_S
    std::uint64_t reference_register_bits = 0;  // R_I, one slot per pixel
    std::uint64_t accumulator_register_bits = 0;  // R_G, one slot per pixel
    std::uint64_t counter_bits = 0;

    std::uint64_t total() const {
        return bucket_register_bits + reference_register_bits + accumulator_register_bits +
               counter_bits;
    }
};

struct Snapshot {
    Reconstruction image;
    std::uint64_t n_pairs = 0;
    std::uint64_t overflow_count = 0;  // fixed-point saturate mode
};

// One-pass differential reconstruction over the three registers R_S, R_I,
// R_G. Each push beyond the first forms one differential pair and updates
// R_G in place; R_S and R_I are then overwritten with the new measurement.
// State size depends only on (dims, mode) — no per-measurement history.
//
// Supported algorithms and their per-pair accumulator updates:
//   igi      R_G(x) += (S_k - R_S)(I_k(x) - R_I(x))
//   igi_s    R_G(x) += (S_k - R_S) I_k(x)
//   igi_i    R_G(x) += S_k (I_k(x) - R_I(x))
//   hbt_igi  same as igi; the bucket slot carries the test-beam sample
//            I_k(x_t0) instead of a bucket sum
//
// A single instance is single-writer: pushes (and snapshots interleaved
// with them) must be serialized by the caller. Distinct instances are
// independent and may run concurrently.
class StreamingEngine {
public:
    StreamingEngine(Dims dims, Algorithm algorithm,
                    kernels::Exec exec = kernels::Exec::parallel);
    StreamingEngine(Dims dims, Algorithm algorithm, const FixedPointConfig& fp);

    void push(double bucket, const Frame& frame);

    // Non-destructive: divides R_G by the current divisor (2 * n_pairs for
    // igi/hbt_igi, n_pairs for the variants); zero image before the first
    // pair. The engine keeps accepting pushes afterwards.
    Snapshot snapshot() const;

    MemoryFootprint footprint() const;

    Dims dims() const { return dims_; }
    Algorithm algorithm() const { return algorithm_; }
    EngineMode mode() const { return mode_; }
    std::uint64_t pushes() const { return pushes_; }
    std::uint64_t pairs() const { return pushes_ > 0 ? pushes_ - 1 : 0; }
    std::uint64_t overflow_count() const { return overflow_count_; }

    // Raw accumulator in register units (undivided), for exactness checks
    // against a float-mode engine fed the same integer inputs.
    std::vector<double> raw_accumulator() const;

private:
    void push_float(double bucket, const Frame& frame);
    void push_fixed(double bucket, const Frame& frame);
    std::int64_t check_input(double value, std::int64_t max_value, std::int64_t pixel);
    void accumulate_fixed(__int128 update, std::size_t pixel);

    Dims dims_{};
    Algorithm algorithm_ = Algorithm::igi;
    EngineMode mode_ = EngineMode::float64;
    kernels::Exec exec_ = kernels::Exec::parallel;
    FixedPointConfig fp_{};

    // float64 registers
    double rs_f_ = 0.0;
    std::vector<double> ri_f_;
    std::vector<double> rg_f_;
    // fixed-point registers
    std::int64_t rs_i_ = 0;
    std::vector<std::int64_t> ri_i_;
    std::vector<std::int64_t> rg_i_;

    std::uint64_t pushes_ = 0;
    std::uint64_t overflow_count_ = 0;
};

struct RunResult {
    Snapshot final;
    std::vector<Snapshot> intermediates;
    std::uint64_t measurements = 0;
    double seconds = 0.0;

    double rate() const { return seconds > 0.0 ? double(measurements) / seconds : 0.0; }
};

// Feeds the source in order, snapshotting after every `snapshot_every`
// pushes. The final snapshot is taken right after the last push with no
// further pass over the data.
RunResult engine_run(RecordSource& source, StreamingEngine& engine, std::uint64_t snapshot_every);

}  // namespace igi
