#include "oasw/report.hpp"

#include <chrono>
#include <fstream>

#include <json.hpp>

#include "oasw/engine.hpp"
#include "oasw/error.hpp"
#include "oasw/util.hpp"

namespace oasw {

EvaluationReport prequential_evaluate(StreamPipeline& pipeline, StreamSource stream) {
    if (stream.empty()) throw DataError("prequential_evaluate: empty stream");

    EvaluationReport report;
    report.meta.pipeline = pipeline.name();
    report.meta.started_at = now_iso8601();

    const std::size_t w = pipeline.report_window();
    report.warmup = 2 * w;
    report.stream_length = stream.size();
    report.per_instance_correct.reserve(stream.size());

    CorrectnessRing curve_ring(w);
    std::chrono::steady_clock::duration predict_total{};
    std::chrono::steady_clock::duration observe_total{};

    stream.rewind();
    std::size_t i = 0;
    while (!stream.done()) {
        const LabeledSample& sample = stream.next();

        const auto t0 = std::chrono::steady_clock::now();
        const int predicted = pipeline.predict(sample.features);
        const auto t1 = std::chrono::steady_clock::now();
        StepResult step = pipeline.observe(sample, predicted);
        const auto t2 = std::chrono::steady_clock::now();
        predict_total += t1 - t0;
        observe_total += t2 - t1;

        report.counts.add(predicted, sample.label);
        report.per_instance_correct.push_back(step.correct ? 1 : 0);
        for (auto& event : step.events) report.events.push_back(event);

        curve_ring.push(step.correct);
        if (i >= 2 * w) {
            report.window_acc_series.emplace_back(i, curve_ring.window_accuracy(i, w));
        }
        ++i;
    }

    report.metrics = compute_metrics(report.counts);
    const auto n = static_cast<double>(report.stream_length);
    report.avg_test_time_ms =
        std::chrono::duration<double, std::milli>(predict_total).count() / n;
    report.amortized_time_ms =
        std::chrono::duration<double, std::milli>(predict_total + observe_total).count() / n;
    report.retrain_time_ms = pipeline.retrain_time_ms();
    report.retrain_count = pipeline.retrain_count();
    report.memory_proxy_bytes = pipeline.memory_bytes();
    return report;
}

std::size_t memory_proxy(const StreamPipeline& pipeline) { return pipeline.memory_bytes(); }

std::string summary_json_text(const EvaluationReport& report) {
    nlohmann::json doc;
    doc["report_version"] = 1;
    doc["stream_length"] = report.stream_length;
    doc["warmup"] = report.warmup;
    doc["counts"] = {{"tp", report.counts.tp},
                     {"fp", report.counts.fp},
                     {"tn", report.counts.tn},
                     {"fn", report.counts.fn}};
    doc["metrics"] = {{"accuracy_pct", report.metrics.accuracy * 100.0},
                      {"precision_pct", report.metrics.precision * 100.0},
                      {"recall_pct", report.metrics.recall * 100.0},
                      {"f1_pct", report.metrics.f1 * 100.0}};
    doc["metrics_display"] = {{"accuracy", format_fixed(report.metrics.accuracy * 100.0, 2)},
                              {"precision", format_fixed(report.metrics.precision * 100.0, 2)},
                              {"recall", format_fixed(report.metrics.recall * 100.0, 2)},
                              {"f1", format_fixed(report.metrics.f1 * 100.0, 2)}};
    doc["metrics_defined"] = {{"precision", report.metrics.precision_defined},
                              {"recall", report.metrics.recall_defined},
                              {"f1", report.metrics.f1_defined}};
    doc["avg_test_time_ms"] = report.avg_test_time_ms;
    doc["amortized_time_ms"] = report.amortized_time_ms;
    doc["retrain_time_ms"] = report.retrain_time_ms;
    doc["retrain_count"] = report.retrain_count;
    doc["memory_proxy_bytes"] = report.memory_proxy_bytes;
    doc["events_count"] = report.events.size();
    doc["meta"] = {{"pipeline", report.meta.pipeline},
                   {"seed", report.meta.seed},
                   {"started_at", report.meta.started_at},
                   {"online_offset", report.meta.online_offset},
                   {"config_snapshot", report.meta.config_snapshot}};
    return doc.dump(2) + "\n";
}

std::string curve_csv_text(const EvaluationReport& report) {
    std::string out = "index,window_accuracy\n";
    for (const auto& [index, accuracy] : report.window_acc_series) {
        out += std::to_string(index);
        out += ',';
        out += format_double(accuracy);
        out += '\n';
    }
    return out;
}

std::string events_jsonl_text(const EvaluationReport& report) {
    std::string out;
    for (const auto& event : report.events) {
        nlohmann::json line = {{"kind", to_string(event.kind)},
                               {"index", event.index},
                               {"acc_now", event.window_acc_now},
                               {"acc_ref", event.window_acc_ref}};
        out += line.dump();
        out += '\n';
    }
    return out;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw DataError("write failed: " + path.string());
}

} // namespace

std::vector<std::filesystem::path> emit_report(const EvaluationReport& report,
                                               const std::filesystem::path& directory,
                                               const ReportFormats& formats) {
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec) throw DataError("cannot create output directory " + directory.string() + ": " +
                            ec.message());

    std::vector<std::filesystem::path> written;
    if (formats.summary_json) {
        written.push_back(directory / "summary.json");
        write_text(written.back(), summary_json_text(report));
    }
    if (formats.curve_csv) {
        written.push_back(directory / "accuracy_curve.csv");
        write_text(written.back(), curve_csv_text(report));
    }
    if (formats.events_jsonl) {
        written.push_back(directory / "events.jsonl");
        write_text(written.back(), events_jsonl_text(report));
    }
    return written;
}

} // namespace oasw
