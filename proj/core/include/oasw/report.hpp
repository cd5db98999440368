#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "oasw/metrics.hpp"
#include "oasw/pipeline.hpp"
#include "oasw/stream.hpp"

namespace oasw {

struct RunMeta {
    std::string pipeline;
    std::uint64_t seed = 0;
    std::string started_at;         // ISO-8601 UTC; masked in snapshot comparisons
    std::size_t online_offset = 0;  // full-stream index of evaluated position 0
    std::string config_snapshot;    // resolved config text, may be empty
};

struct EvaluationReport {
    std::vector<std::uint8_t> per_instance_correct;
    /// Smoothed accuracy over the trailing report window; first entry at
    /// index 2 * window (rows before warm-up carry no reference window).
    std::vector<std::pair<std::size_t, double>> window_acc_series;
    std::vector<OaswEvent> events;
    ConfusionCounts counts;
    Metrics metrics;
    double avg_test_time_ms = 0.0;       // predict() only
    double amortized_time_ms = 0.0;      // predict() + observe(), retrains included
    double retrain_time_ms = 0.0;
    std::size_t retrain_count = 0;
    std::size_t memory_proxy_bytes = 0;
    std::size_t stream_length = 0;
    std::size_t warmup = 0;              // 2 * report window
    RunMeta meta;
};

/// Runs the test-then-train loop over the whole stream. The label is handed
/// to the pipeline only after the prediction for that sample is recorded.
EvaluationReport prequential_evaluate(StreamPipeline& pipeline, StreamSource stream);

/// Structural memory accounting of the pipeline's live state.
std::size_t memory_proxy(const StreamPipeline& pipeline);

struct ReportFormats {
    bool summary_json = true;
    bool curve_csv = true;
    bool events_jsonl = true;
};

/// Serialized forms (byte-stable for a fixed report).
std::string summary_json_text(const EvaluationReport& report);
std::string curve_csv_text(const EvaluationReport& report);
std::string events_jsonl_text(const EvaluationReport& report);

/// Writes summary.json / accuracy_curve.csv / events.jsonl into `directory`
/// (created if absent) and returns the paths written.
std::vector<std::filesystem::path> emit_report(const EvaluationReport& report,
                                               const std::filesystem::path& directory,
                                               const ReportFormats& formats = {});

} // namespace oasw
