// Command-line front end: simulate / reconstruct / hbt / variants /
// analyze / compare. Exit codes: 0 success, 2 configuration error,
// 3 data or format error, 4 fixed-point overflow.

#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "igi/commands.hpp"
#include "igi/errors.hpp"

namespace {

igi::Pixel parse_xt0(const std::string& text) {
    const std::size_t comma = text.find(',');
    if (comma == std::string::npos)
        throw igi::ConfigError("--xt0 expects X,Y, got '" + text + "'");
    try {
        return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw igi::ConfigError("--xt0 expects X,Y, got '" + text + "'");
    }
}

struct CommonFlags {
    std::string config_path;
    igi::CliOverrides overrides;

    void attach(CLI::App* cmd, bool with_engine_flags) {
        cmd->add_option("--config", config_path, "key=value configuration file");
        cmd->add_option("--seed", overrides.seed, "simulation seed (u64)");
        cmd->add_option("--out", overrides.out_dir, "output directory");
        cmd->add_option("--measurements", overrides.measurements, "number of measurements");
        if (with_engine_flags) {
            cmd->add_option("--algorithm", overrides.algorithm, "algorithm name");
            cmd->add_option("--mode", overrides.mode, "arithmetic mode: float|fixed");
            cmd->add_option("--cadence", overrides.cadence, "snapshot every N measurements");
        }
    }

    igi::ExperimentConfig resolve() const {
        igi::ExperimentConfig cfg;
        if (!config_path.empty()) igi::apply_config_file(cfg, config_path);
        igi::apply_overrides(cfg, overrides);
        return cfg;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"streaming differential ghost-imaging toolkit"};
    app.require_subcommand(1);

    CommonFlags sim_flags, rec_flags, var_flags, hbt_flags, ana_flags, cmp_flags;
    std::string recording, test_recording, xt0_text = "0,0";
    std::string image_a, image_b;

    CLI::App* sim = app.add_subcommand("simulate", "synthesize a measurement recording");
    sim_flags.attach(sim, false);

    CLI::App* rec = app.add_subcommand("reconstruct", "reconstruct an image from a recording");
    rec->add_option("recording", recording, "input recording")->required();
    rec_flags.attach(rec, true);

    CLI::App* var = app.add_subcommand("variants", "reconstruct with a single-beam variant");
    var->add_option("recording", recording, "input recording")->required();
    var_flags.attach(var, true);
    var_flags.overrides.algorithm = "igi_s";

    CLI::App* hbt = app.add_subcommand("hbt", "second-order correlation against a fixed pixel");
    hbt->add_option("recording", recording, "reference-arm recording")->required();
    hbt->add_option("test_recording", test_recording, "optional separate test-arm recording");
    hbt->add_option("--xt0", xt0_text, "fixed test pixel X,Y")->required();
    hbt_flags.attach(hbt, true);
    hbt_flags.overrides.algorithm = "hbt_igi";

    CLI::App* ana = app.add_subcommand("analyze", "accumulator growth and memory accounting");
    ana->add_option("recording", recording, "input recording")->required();
    ana_flags.attach(ana, false);

    CLI::App* cmp = app.add_subcommand("compare", "compare two reconstruction images");
    cmp->add_option("image_a", image_a, "first image base path (no extension)")->required();
    cmp->add_option("image_b", image_b, "second image base path (no extension)")->required();
    cmp_flags.attach(cmp, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? igi::exit_ok : igi::exit_config_error;
    }

    try {
        if (sim->parsed()) {
            igi::run_simulate(sim_flags.resolve());
        } else if (rec->parsed()) {
            igi::run_reconstruct(recording, rec_flags.resolve());
        } else if (var->parsed()) {
            const igi::ExperimentConfig cfg = var_flags.resolve();
            if (cfg.algorithm != igi::Algorithm::igi_s && cfg.algorithm != igi::Algorithm::igi_i)
                throw igi::ConfigError("variants supports igi_s or igi_i");
            igi::run_reconstruct(recording, cfg);
        } else if (hbt->parsed()) {
            igi::run_hbt(recording,
                         test_recording.empty() ? std::nullopt
                                                : std::make_optional(test_recording),
                         parse_xt0(xt0_text), hbt_flags.resolve());
        } else if (ana->parsed()) {
            igi::run_analyze(recording, ana_flags.resolve());
        } else if (cmp->parsed()) {
            igi::run_compare(image_a, image_b, cmp_flags.resolve());
        }
    } catch (const igi::OverflowError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return igi::exit_overflow_error;
    } catch (const igi::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return igi::exit_config_error;
    } catch (const igi::DataError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return igi::exit_data_error;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return igi::exit_data_error;
    }
    return igi::exit_ok;
}
