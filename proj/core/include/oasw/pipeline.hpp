#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "oasw/classifier.hpp"
#include "oasw/stream.hpp"

namespace oasw {

enum class OaswEventKind {
    WarningEntered,
    FalseAlarm,
    DriftDetected,
    RetrainedOnDrift,
    StabilizationRetrain,
    WindowReleased,
};

std::string to_string(OaswEventKind kind);

/// One entry of the adaptation event log. Baseline detector pipelines reuse
/// the Warning/Drift/Retrained kinds so every report shares one log format.
struct OaswEvent {
    OaswEventKind kind = OaswEventKind::WarningEntered;
    std::size_t index = 0; // 0-based position in the evaluated stream
    double window_acc_now = 0.0;
    double window_acc_ref = 0.0;
};

struct StepResult {
    bool correct = false;
    std::vector<OaswEvent> events;
};

/// Prequential step contract. Each sample is processed in two phases:
/// predict() sees only the feature vector, then observe() reveals the label
/// and lets the pipeline adapt. The harness records the prediction before
/// calling observe(), so a pipeline structurally cannot peek at labels.
class StreamPipeline {
public:
    virtual ~StreamPipeline() = default;

    virtual int predict(std::span<const double> features) = 0;
    virtual StepResult observe(const LabeledSample& sample, int predicted) = 0;

    /// Smoothing window for the reported accuracy curve.
    virtual std::size_t report_window() const = 0;
    /// Number of per-sample records currently held live (window buffers,
    /// correctness history). Excludes the fitted model.
    virtual std::size_t live_sample_entries() const = 0;
    /// Structural memory proxy in bytes: engine overhead + live buffers +
    /// model structure. Deterministic, not an RSS measurement.
    virtual std::size_t memory_bytes() const = 0;
    virtual const BinaryClassifier& model() const = 0;
    virtual std::string name() const = 0;

    /// Refit bookkeeping; pipelines that never retrain keep these at zero.
    virtual std::size_t retrain_count() const { return 0; }
    virtual double retrain_time_ms() const { return 0.0; }
};

/// Fixed-model pipeline: predicts with the offline model forever and never
/// adapts. This is the no-adaptation comparison arm.
class StaticModelPipeline final : public StreamPipeline {
public:
    StaticModelPipeline(std::shared_ptr<const BinaryClassifier> model,
                        std::size_t report_window = 100);

    int predict(std::span<const double> features) override;
    StepResult observe(const LabeledSample& sample, int predicted) override;
    std::size_t report_window() const override { return report_window_; }
    std::size_t live_sample_entries() const override { return 0; }
    std::size_t memory_bytes() const override;
    const BinaryClassifier& model() const override { return *model_; }
    std::string name() const override { return "static"; }

private:
    std::shared_ptr<const BinaryClassifier> model_;
    std::size_t report_window_;
};

} // namespace oasw
