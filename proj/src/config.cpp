#include "igi/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace igi {

void ExperimentConfig::validate() const {
    field.validate();
    detector.validate();
    fixed.validate();
    parse_mask_spec(mask_spec);
    if (measurements < 2) throw ConfigError("run.measurements must be >= 2");
    if (cadence < 1) throw ConfigError("run.cadence must be >= 1");
    if (out_dir.empty()) throw ConfigError("run.out must not be empty");
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

long long to_int(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const long long v = std::strtoll(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0')
        throw ConfigError("config: " + key + " expects an integer, got '" + value + "'");
    return v;
}

std::uint64_t to_uint(const std::string& key, const std::string& value) {
    const long long v = to_int(key, value);
    if (v < 0) throw ConfigError("config: " + key + " must be nonnegative");
    return std::uint64_t(v);
}

double to_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
        throw ConfigError("config: " + key + " expects a number, got '" + value + "'");
    return v;
}

EngineMode to_mode(const std::string& value) {
    if (value == "float") return EngineMode::float64;
    if (value == "fixed") return EngineMode::fixed_point;
    throw ConfigError("config: run.mode must be 'float' or 'fixed', got '" + value + "'");
}

void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "field.width")
        cfg.field.width = int(to_int(key, value));
    else if (key == "field.height")
        cfg.field.height = int(to_int(key, value));
    else if (key == "field.grain_radius")
        cfg.field.grain_radius = to_double(key, value);
    else if (key == "field.mean_intensity")
        cfg.field.mean_intensity = to_double(key, value);
    else if (key == "detector.quant_bits")
        cfg.detector.quant_bits = int(to_int(key, value));
    else if (key == "detector.noise_sigma")
        cfg.detector.noise_sigma = to_double(key, value);
    else if (key == "mask.spec")
        cfg.mask_spec = value;
    else if (key == "run.seed")
        cfg.field.seed = to_uint(key, value);
    else if (key == "run.measurements")
        cfg.measurements = to_uint(key, value);
    else if (key == "run.algorithm")
        cfg.algorithm = parse_algorithm(value);
    else if (key == "run.mode")
        cfg.mode = to_mode(value);
    else if (key == "run.cadence")
        cfg.cadence = to_uint(key, value);
    else if (key == "run.out")
        cfg.out_dir = value;
    else if (key == "fixed.s_bits")
        cfg.fixed.s_bits = int(to_int(key, value));
    else if (key == "fixed.i_bits")
        cfg.fixed.i_bits = int(to_int(key, value));
    else if (key == "fixed.g_bits")
        cfg.fixed.g_bits = int(to_int(key, value));
    else if (key == "fixed.overflow_policy")
        cfg.fixed.policy = parse_overflow_policy(value);
    else
        throw ConfigError("config: unknown key '" + key + "'");
}

}  // namespace

void apply_config_text(ExperimentConfig& cfg, const std::string& text,
                       const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected key=value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        apply_key(cfg, key, value);
    }
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    apply_config_text(cfg, text.str(), path);
}

void apply_overrides(ExperimentConfig& cfg, const CliOverrides& overrides) {
    if (overrides.seed) cfg.field.seed = *overrides.seed;
    if (overrides.out_dir) cfg.out_dir = *overrides.out_dir;
    if (overrides.algorithm) cfg.algorithm = parse_algorithm(*overrides.algorithm);
    if (overrides.mode) cfg.mode = to_mode(*overrides.mode);
    if (overrides.cadence) cfg.cadence = *overrides.cadence;
    if (overrides.measurements) cfg.measurements = *overrides.measurements;
}

}  // namespace igi
