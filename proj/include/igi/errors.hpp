#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace igi {

// Exit codes used by the CLI. Library code throws the typed errors below;
// the CLI maps them to these codes.
enum ExitCode : int {
    exit_ok = 0,
    exit_config_error = 2,
    exit_data_error = 3,
    exit_overflow_error = 4,
};

// Invalid configuration: bad dimensions, bad widths, unknown config keys.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad or inconsistent data: shape mismatches, malformed files, streams too
// short for the requested estimator.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Datapath stages of the fixed-point engine, in evaluation order.
enum class Stage { input, difference, product, accumulate };

const char* stage_name(Stage s);

// Fixed-point range violation under OverflowPolicy::error. Carries enough
// context to locate the offending value in the stream.
struct OverflowError : std::runtime_error {
    Stage stage;
    std::int64_t pixel;         // linear pixel index, -1 for the bucket path
    std::uint64_t measurement;  // 1-based measurement index

    OverflowError(Stage stage_, std::int64_t pixel_, std::uint64_t measurement_,
                  const std::string& msg)
        : std::runtime_error(msg), stage(stage_), pixel(pixel_), measurement(measurement_) {}
};

}  // namespace igi
