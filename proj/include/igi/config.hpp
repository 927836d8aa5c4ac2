#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "igi/engine.hpp"
#include "igi/fixed_point.hpp"
#include "igi/speckle.hpp"

namespace igi {

// Full experiment description. Defaults mirror the reference setup:
// 400x280 frames, 30,000 measurements, 8-bit readout, snapshot every 125th
// measurement. One seed drives the field and both detector channels.
struct ExperimentConfig {
    FieldConfig field;
    DetectorConfig detector;
    std::string mask_spec = "th";
    std::uint64_t measurements = 30000;
    Algorithm algorithm = Algorithm::igi;
    EngineMode mode = EngineMode::float64;
    FixedPointConfig fixed;
    std::uint64_t cadence = 125;
    std::string out_dir = "out";

    void validate() const;
};

// Flat key=value configuration with dotted section prefixes; '#' starts a
// comment; unknown keys are errors. Recognized keys:
//   field.width field.height field.grain_radius field.mean_intensity
//   detector.quant_bits detector.noise_sigma
//   mask.spec
//   run.seed run.measurements run.algorithm run.mode run.cadence run.out
//   fixed.s_bits fixed.i_bits fixed.g_bits fixed.overflow_policy
void apply_config_text(ExperimentConfig& cfg, const std::string& text,
                       const std::string& origin);
void apply_config_file(ExperimentConfig& cfg, const std::string& path);

// Flag values that override the config file.
struct CliOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<std::string> algorithm;
    std::optional<std::string> mode;
    std::optional<std::uint64_t> cadence;
    std::optional<std::uint64_t> measurements;
};

void apply_overrides(ExperimentConfig& cfg, const CliOverrides& overrides);

}  // namespace igi
