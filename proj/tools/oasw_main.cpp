#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "oasw/commands.hpp"
#include "oasw/config.hpp"
#include "oasw/detectors.hpp"
#include "oasw/error.hpp"

namespace {

struct CliState {
    std::string config_path;
    std::string model_path;
    std::string out_path;
    std::string target;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> jobs;
    std::optional<std::string> out_dir;
    std::optional<std::string> detector;
};

void add_common_options(CLI::App* sub, CliState& state) {
    sub->add_option("-c,--config", state.config_path, "INI configuration file");
    sub->add_option("--seed", state.seed, "override every seed in the configuration");
    sub->add_option("--jobs", state.jobs, "override [run] jobs");
    sub->add_option("--out-dir", state.out_dir, "override [output] directory");
}

oasw::RunConfig make_config(const CliState& state) {
    oasw::RunConfig cfg;
    if (!state.config_path.empty()) {
        cfg = oasw::RunConfig::from_file(state.config_path);
    }
    if (state.seed) {
        cfg.seed = *state.seed;
        cfg.classifier.seed = *state.seed;
        cfg.pso.seed = *state.seed;
        cfg.synth.seed = *state.seed;
    }
    if (state.jobs) {
        if (*state.jobs == 0) {
            throw oasw::ConfigError("--jobs must be at least 1");
        }
        cfg.jobs = *state.jobs;
        cfg.pso.jobs = *state.jobs;
    }
    if (state.out_dir) {
        cfg.output.directory = *state.out_dir;
    }
    if (state.detector) {
        if (*state.detector != "none") {
            oasw::detector_from_string(*state.detector);
        }
        cfg.baseline.detector = *state.detector;
    }
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"streaming drift detection and adaptation toolkit"};
    app.require_subcommand(1);

    CliState state;

    CLI::App* train = app.add_subcommand("train", "fit the offline model and save it");
    add_common_options(train, state);
    train->add_option("-o,--out", state.out_path, "model output path")->required();

    CLI::App* run_oasw = app.add_subcommand("run-oasw", "adaptive prequential run");
    add_common_options(run_oasw, state);
    run_oasw->add_option("-m,--model", state.model_path, "trained model path")->required();

    CLI::App* baseline = app.add_subcommand("baseline", "detector-driven prequential run");
    add_common_options(baseline, state);
    baseline->add_option("-m,--model", state.model_path, "trained model path")->required();
    baseline->add_option("-d,--detector", state.detector, "ddm, eddm, adwin, or none");

    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic drift stream CSV");
    add_common_options(synth, state);
    synth->add_option("-o,--out", state.out_path, "CSV output path")->required();

    CLI::App* tune = app.add_subcommand("tune", "hyperparameter search");
    add_common_options(tune, state);
    tune->add_option("--target", state.target, "classifier or oasw")->required();
    tune->add_option("-m,--model", state.model_path, "trained model path (oasw target)");
    tune->add_option("-o,--out", state.out_path, "INI fragment output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    try {
        const oasw::RunConfig cfg = make_config(state);
        if (train->parsed()) {
            return oasw::cmd_train(cfg, state.out_path);
        }
        if (run_oasw->parsed()) {
            return oasw::cmd_run_oasw(cfg, state.model_path);
        }
        if (baseline->parsed()) {
            return oasw::cmd_baseline(cfg, state.model_path);
        }
        if (synth->parsed()) {
            return oasw::cmd_synth(cfg, state.out_path);
        }
        if (tune->parsed()) {
            const std::string out = state.out_path.empty() ? "tuned.ini" : state.out_path;
            return oasw::cmd_tune(cfg, state.target, state.model_path, out);
        }
    } catch (const oasw::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const oasw::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
