#include "oasw/commands.hpp"

#include <functional>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "oasw/csv.hpp"
#include "oasw/detectors.hpp"
#include "oasw/engine.hpp"
#include "oasw/error.hpp"
#include "oasw/gbdt.hpp"
#include "oasw/pipeline.hpp"
#include "oasw/report.hpp"
#include "oasw/tuner.hpp"
#include "oasw/util.hpp"

namespace oasw {
namespace {

int dispatch(const std::function<void()>& body) {
    try {
        body();
        return exit_code::ok;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_code::config_error;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return exit_code::data_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::runtime_error;
    }
}

StreamSource load_dataset(const RunConfig& config) {
    const auto& ds = config.dataset;
    if (ds.path.empty()) throw ConfigError("[dataset] path is required");
    if (!std::filesystem::exists(ds.path)) {
        throw ConfigError("[dataset] path does not exist: " + ds.path);
    }
    CsvOptions options;
    options.label_column = ds.label_column;
    options.positive_labels.insert(ds.positive_labels.begin(), ds.positive_labels.end());

    StreamSource stream = [&] {
        if (ds.second_path.empty()) return load_csv(ds.path, options);
        if (!std::filesystem::exists(ds.second_path)) {
            throw ConfigError("[dataset] second_path does not exist: " + ds.second_path);
        }
        return load_csv_concat(ds.path, ds.concat_tail_fraction, ds.second_path, options);
    }();
    if (ds.decimate_keep_every > 1) {
        stream = decimate(stream, ds.decimate_keep_every, mix_seed(config.seed, 0xDEC1));
    }
    return stream;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw DataError("write failed: " + path.string());
}

std::shared_ptr<const GbdtModel> load_model(const std::filesystem::path& model_path,
                                            const StreamSource& stream) {
    if (model_path.empty()) throw ConfigError("a --model file is required");
    if (!std::filesystem::exists(model_path)) {
        throw ConfigError("model file does not exist: " + model_path.string());
    }
    auto model = std::make_shared<const GbdtModel>(GbdtModel::load(model_path));
    if (model->schema_width() != stream.schema().width()) {
        throw DataError("model expects " + std::to_string(model->schema_width()) +
                        " features but the dataset has " +
                        std::to_string(stream.schema().width()));
    }
    return model;
}

std::filesystem::path out_path(const RunConfig& config, const std::string& name) {
    return std::filesystem::path(config.output.directory) / name;
}

void print_report_line(const EvaluationReport& report) {
    std::cout << report.meta.pipeline << ": accuracy " << format_fixed(report.metrics.accuracy * 100.0, 2)
              << "% over " << report.stream_length << " samples, " << report.events.size()
              << " events, " << report.retrain_count << " retrains\n";
}

} // namespace

int cmd_train(const RunConfig& config, const std::filesystem::path& model_out) {
    return dispatch([&] {
        if (model_out.empty()) throw ConfigError("an --out model path is required");
        const StreamSource stream = load_dataset(config);
        const HoldoutSplit split = holdout_split(stream, config.dataset.split_fraction);

        RunConfig resolved = config;
        if (config.classifier_tune) {
            const HyperParamSpace space = default_classifier_space();
            const ClassifierTuneResult tuned =
                tune_classifier(split.offline.samples(), space, config.pso, config.folds,
                                mix_seed(config.seed, 0xC1A5));
            resolved.classifier = tuned.best;
            resolved.classifier_tune = false;
            write_tuning_trace_csv(space, tuned.search,
                                   out_path(config, "classifier_tuning_trace.csv"));
            std::cout << "tuned classifier: mean validation accuracy "
                      << format_fixed(tuned.mean_validation_accuracy * 100.0, 2) << "%\n";
        }

        const GbdtModel model = fit_gbdt(split.offline.samples(), resolved.classifier);
        if (model_out.has_parent_path()) {
            std::error_code ec;
            std::filesystem::create_directories(model_out.parent_path(), ec);
        }
        model.save(model_out);
        write_text_file(out_path(config, "resolved_train.ini"), resolved.resolved_ini());

        std::size_t correct = 0;
        for (const auto& sample : split.offline.samples()) {
            correct += model.predict(sample.features).label == sample.label ? 1 : 0;
        }
        std::cout << "model written to " << model_out.string() << " ("
                  << split.offline.size() << " offline samples, " << model.trees().size()
                  << " trees, training accuracy "
                  << format_fixed(100.0 * static_cast<double>(correct) /
                                      static_cast<double>(split.offline.size()),
                                  2)
                  << "%)\n";
    });
}

int cmd_run_oasw(const RunConfig& config, const std::filesystem::path& model_path) {
    return dispatch([&] {
        const StreamSource stream = load_dataset(config);
        const HoldoutSplit split = holdout_split(stream, config.dataset.split_fraction);
        const auto model = load_model(model_path, stream);
        const auto trainer = std::make_shared<const GbdtTrainer>(model->params());

        RunConfig resolved = config;
        if (config.oasw_tune) {
            const HyperParamSpace space = default_oasw_space();
            const OaswTuneResult tuned = tune_oasw(split.online, model, trainer, space,
                                                   config.pso, config.tune_fraction);
            resolved.oasw = tuned.best;
            resolved.oasw_tune = false;
            write_tuning_trace_csv(space, tuned.search,
                                   out_path(config, "oasw_tuning_trace.csv"));
            std::cout << "tuned oasw: best accuracy "
                      << format_fixed(tuned.max_accuracy * 100.0, 2) << "%\n";
        }

        RunResult run = run_stream(model, trainer, split.online.clone(), resolved.oasw);
        run.trace.meta.seed = config.seed;
        run.trace.meta.online_offset = split.online_offset;
        run.trace.meta.config_snapshot = resolved.resolved_ini();
        emit_report(run.trace, config.output.directory, config.output.formats);
        write_text_file(out_path(config, "resolved_run.ini"), resolved.resolved_ini());
        print_report_line(run.trace);
    });
}

int cmd_baseline(const RunConfig& config, const std::filesystem::path& model_path) {
    return dispatch([&] {
        const StreamSource stream = load_dataset(config);
        const HoldoutSplit split = holdout_split(stream, config.dataset.split_fraction);
        const auto model = load_model(model_path, stream);
        const auto trainer = std::make_shared<const GbdtTrainer>(model->params());

        const std::size_t report_window =
            config.baseline.report_window > 0 ? config.baseline.report_window : config.oasw.t;
        const std::size_t retrain_window = config.baseline.retrain_window > 0
                                               ? config.baseline.retrain_window
                                               : config.oasw.t_prime_max;

        EvaluationReport report;
        if (config.baseline.detector == "none") {
            StaticModelPipeline pipeline(model, report_window);
            report = prequential_evaluate(pipeline, split.online.clone());
        } else {
            const DetectorKind kind = detector_from_string(config.baseline.detector);
            DetectorPipeline pipeline(model, trainer, kind, retrain_window, report_window);
            report = prequential_evaluate(pipeline, split.online.clone());
        }
        report.meta.seed = config.seed;
        report.meta.online_offset = split.online_offset;
        report.meta.config_snapshot = config.resolved_ini();
        emit_report(report, config.output.directory, config.output.formats);
        write_text_file(out_path(config, "resolved_baseline.ini"), config.resolved_ini());
        print_report_line(report);
    });
}

int cmd_synth(const RunConfig& config, const std::filesystem::path& csv_out) {
    return dispatch([&] {
        if (config.synth_length == 0) {
            throw ConfigError("cmd_synth needs a [synth] section with a length");
        }
        if (csv_out.empty()) throw ConfigError("an --out CSV path is required");
        const StreamSource stream = generate_synthetic(config.synth, config.synth_length);

        std::vector<std::string> header;
        header.push_back("synthetic drift stream");
        std::istringstream snapshot(config.resolved_ini());
        bool in_synth = false;
        for (std::string line; std::getline(snapshot, line);) {
            if (line == "[synth]") in_synth = true;
            else if (!line.empty() && line.front() == '[') in_synth = false;
            if (in_synth && !line.empty()) header.push_back(line);
        }
        if (csv_out.has_parent_path()) {
            std::error_code ec;
            std::filesystem::create_directories(csv_out.parent_path(), ec);
        }
        write_csv(stream, csv_out, header);
        std::cout << "wrote " << stream.size() << " samples to " << csv_out.string() << "\n";
    });
}

int cmd_tune(const RunConfig& config, const std::string& target,
             const std::filesystem::path& model_path,
             const std::filesystem::path& fragment_out) {
    return dispatch([&] {
        if (fragment_out.empty()) throw ConfigError("an --out fragment path is required");
        const StreamSource stream = load_dataset(config);
        const HoldoutSplit split = holdout_split(stream, config.dataset.split_fraction);

        if (target == "classifier") {
            const HyperParamSpace space = default_classifier_space();
            const ClassifierTuneResult tuned =
                tune_classifier(split.offline.samples(), space, config.pso, config.folds,
                                mix_seed(config.seed, 0xC1A5));
            write_text_file(fragment_out, classifier_params_ini(tuned.best));
            write_tuning_trace_csv(space, tuned.search,
                                   out_path(config, "classifier_tuning_trace.csv"));
            std::cout << "best classifier config written to " << fragment_out.string()
                      << " (mean validation accuracy "
                      << format_fixed(tuned.mean_validation_accuracy * 100.0, 2) << "%)\n";
        } else if (target == "oasw") {
            const auto model = load_model(model_path, stream);
            const auto trainer = std::make_shared<const GbdtTrainer>(model->params());
            const HyperParamSpace space = default_oasw_space();
            const OaswTuneResult tuned = tune_oasw(split.online, model, trainer, space,
                                                   config.pso, config.tune_fraction);
            write_text_file(fragment_out, oasw_params_ini(tuned.best));
            write_tuning_trace_csv(space, tuned.search,
                                   out_path(config, "oasw_tuning_trace.csv"));
            std::cout << "best oasw config written to " << fragment_out.string()
                      << " (stream accuracy " << format_fixed(tuned.max_accuracy * 100.0, 2)
                      << "%)\n";
        } else {
            throw ConfigError("unknown tune target '" + target +
                              "' (valid: classifier, oasw)");
        }
    });
}

} // namespace oasw
