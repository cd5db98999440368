#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "oasw/classifier.hpp"
#include "oasw/pipeline.hpp"
#include "oasw/report.hpp"
#include "oasw/stream.hpp"

namespace oasw {

struct OaswParams {
    double alpha = 0.98;          // warning threshold
    double beta = 0.95;           // drift threshold
    std::size_t t = 300;          // sliding window size
    std::size_t t_prime_max = 1000; // adaptive window capacity

    /// Enforces 0 < beta < alpha < 1, t >= 2, t_prime_max >= t.
    void validate() const;
};

enum class OaswStateKind { Normal = 0, Warning = 1, Drift = 2 };

std::string to_string(OaswStateKind state);

/// Fixed-capacity ring of per-sample correctness flags. Positions are
/// global: flag k is the k-th flag ever pushed; only the most recent
/// `capacity` flags stay addressable.
class CorrectnessRing {
public:
    explicit CorrectnessRing(std::size_t capacity);

    void push(bool correct);
    std::size_t pushed() const { return count_; }
    std::size_t stored() const { return count_ < slots_.size() ? count_ : slots_.size(); }
    std::size_t capacity() const { return slots_.size(); }

    /// Mean of the t flags at positions (end_index - t, end_index].
    /// The full range must still be retained.
    double window_accuracy(std::size_t end_index, std::size_t t) const;

private:
    std::vector<std::uint8_t> slots_;
    std::size_t count_ = 0;
};

/// The adaptive sliding-window engine: prequential scoring, dual-window
/// drift detection (warning threshold alpha, drift threshold beta), an
/// adaptive window that collects new-concept samples, and retraining.
class OaswEngine final : public StreamPipeline {
public:
    OaswEngine(std::shared_ptr<const BinaryClassifier> model,
               std::shared_ptr<const ClassifierTrainer> trainer, OaswParams params);

    int predict(std::span<const double> features) override;
    StepResult observe(const LabeledSample& sample, int predicted) override;

    std::size_t report_window() const override { return params_.t; }
    std::size_t live_sample_entries() const override;
    std::size_t memory_bytes() const override;
    const BinaryClassifier& model() const override { return *model_; }
    std::string name() const override { return "oasw"; }
    std::size_t retrain_count() const override { return retrain_count_; }
    double retrain_time_ms() const override { return retrain_ms_; }

    OaswStateKind state() const { return state_; }
    const OaswParams& params() const { return params_; }
    std::size_t samples_seen() const { return seen_; }
    std::size_t adaptive_window_size() const { return adaptive_window_.size(); }
    const CorrectnessRing& ring() const { return ring_; }

private:
    void refit();

    std::shared_ptr<const BinaryClassifier> model_;
    std::shared_ptr<const ClassifierTrainer> trainer_;
    OaswParams params_;
    CorrectnessRing ring_;
    std::vector<LabeledSample> adaptive_window_;
    OaswStateKind state_ = OaswStateKind::Normal;
    std::size_t seen_ = 0;
    std::size_t drift_index_ = 0;      // f, valid while in Drift state
    double baseline_acc_ = 0.0;        // accuracy of the window ending at f + t
    bool baseline_recorded_ = false;
    bool retrain_pending_ = false;     // drift fired before the window was viable
    std::size_t retrain_count_ = 0;
    double retrain_ms_ = 0.0;
};

struct RunResult {
    double avg_accuracy = 0.0;
    EvaluationReport trace;
};

/// Whole-stream adaptive run: folds the engine over every sample and
/// reports the plain mean of all correctness flags (warm-up included).
RunResult run_stream(std::shared_ptr<const BinaryClassifier> model,
                     std::shared_ptr<const ClassifierTrainer> trainer, StreamSource stream,
                     const OaswParams& params);

/// Accuracy-only variant of run_stream (no report assembly); this is the
/// tuning objective.
double run_average_accuracy(std::shared_ptr<const BinaryClassifier> model,
                            std::shared_ptr<const ClassifierTrainer> trainer, StreamSource stream,
                            const OaswParams& params);

} // namespace oasw
