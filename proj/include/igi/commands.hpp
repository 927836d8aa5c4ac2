#pragma once

#include <optional>
#include <string>

#include "igi/config.hpp"
#include "igi/image.hpp"

namespace igi {

// CLI entry points. Each throws ConfigError / DataError / OverflowError on
// failure; the binary maps those to exit codes 2 / 3 / 4. All artifacts are
// deterministic functions of (config, seed); reported wall-clock times
// (stdout and the progress CSV's elapsed column) are the one exception.

// Simulates the full two-arm measurement sequence and writes
// <out>/stream.igirec: one speckle field per measurement, masked + quantized
// into the bucket sum on the test arm, quantized into pixel codes on the
// reference arm.
std::string run_simulate(const ExperimentConfig& cfg);

// Reconstructs from a recording. gi replays the batch-oracle sums in one
// pass; igi / igi_s / igi_i drive the streaming engine in the configured
// mode. Writes <out>/<algo>_final.pgm(+.meta), intermediates at the snapshot
// cadence, and <out>/<algo>_progress.csv with (n, elapsed_s, r_vs_final).
void run_reconstruct(const std::string& recording_path, const ExperimentConfig& cfg);

// Second-order correlation image against a fixed test pixel. With one
// recording the test samples are the reference frames' own values at x_t0;
// a second recording supplies an independent test arm.
void run_hbt(const std::string& recording_path,
             const std::optional<std::string>& test_recording_path, Pixel x_t0,
             const ExperimentConfig& cfg);

// Accumulator growth series and the frame-storage comparison. Writes
// <out>/growth.csv and <out>/memory.csv.
void run_analyze(const std::string& recording_path, const ExperimentConfig& cfg);

// Compares two images written by run_reconstruct/run_hbt (pgm + meta base
// paths, without extension). Writes <out>/quality.csv.
void run_compare(const std::string& base_a, const std::string& base_b,
                 const ExperimentConfig& cfg);

}  // namespace igi
