#include "oasw/engine.hpp"

#include <chrono>

#include "oasw/error.hpp"

namespace oasw {

void OaswParams::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
    if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("beta must lie in (0, 1)");
    if (!(beta < alpha)) throw ConfigError("beta must be strictly below alpha");
    if (t < 2) throw ConfigError("t must be >= 2");
    if (t_prime_max < t) throw ConfigError("t_prime_max must be >= t");
}

std::string to_string(OaswStateKind state) {
    switch (state) {
    case OaswStateKind::Normal: return "Normal";
    case OaswStateKind::Warning: return "Warning";
    case OaswStateKind::Drift: return "Drift";
    }
    throw RuntimeFailure("unknown OaswStateKind");
}

CorrectnessRing::CorrectnessRing(std::size_t capacity) : slots_(capacity) {
    if (capacity == 0) throw ConfigError("CorrectnessRing: capacity must be >= 1");
}

void CorrectnessRing::push(bool correct) {
    slots_[count_ % slots_.size()] = correct ? 1 : 0;
    ++count_;
}

double CorrectnessRing::window_accuracy(std::size_t end_index, std::size_t t) const {
    if (t == 0) throw RuntimeFailure("window_accuracy: t must be >= 1");
    if (end_index >= count_ || end_index + 1 < t) {
        throw RuntimeFailure("window_accuracy: window not fully observed yet");
    }
    const std::size_t first = end_index + 1 - t;
    const std::size_t oldest_retained = count_ - stored();
    if (first < oldest_retained) {
        throw RuntimeFailure("window_accuracy: window no longer retained");
    }
    std::size_t sum = 0;
    for (std::size_t pos = first; pos <= end_index; ++pos) {
        sum += slots_[pos % slots_.size()];
    }
    return static_cast<double>(sum) / static_cast<double>(t);
}

OaswEngine::OaswEngine(std::shared_ptr<const BinaryClassifier> model,
                       std::shared_ptr<const ClassifierTrainer> trainer, OaswParams params)
    : model_(std::move(model)), trainer_(std::move(trainer)), params_(params),
      ring_(2 * params.t) {
    params_.validate();
    if (!model_) throw ConfigError("OaswEngine: model must not be null");
    if (!trainer_) throw ConfigError("OaswEngine: trainer must not be null");
}

int OaswEngine::predict(std::span<const double> features) {
    return model_->predict(features).label;
}

void OaswEngine::refit() {
    const auto start = std::chrono::steady_clock::now();
    model_ = trainer_->fit(adaptive_window_);
    const auto stop = std::chrono::steady_clock::now();
    retrain_ms_ += std::chrono::duration<double, std::milli>(stop - start).count();
    ++retrain_count_;
    if (!model_) throw RuntimeFailure("trainer returned a null model");
}

StepResult OaswEngine::observe(const LabeledSample& sample, int predicted) {
    StepResult result;
    result.correct = predicted == sample.label;

    const std::size_t i = seen_;
    ring_.push(result.correct);
    ++seen_;

    // Warm-up: both windows need history; no detection before index 2t.
    if (i < 2 * params_.t) return result;

    const double acc_now = ring_.window_accuracy(i, params_.t);
    const double acc_ref = ring_.window_accuracy(i - params_.t, params_.t);

    bool appended = false;
    auto append_once = [&] {
        if (!appended && adaptive_window_.size() < params_.t_prime_max) {
            adaptive_window_.push_back(sample);
            appended = true;
        }
    };
    auto emit = [&](OaswEventKind kind) {
        result.events.push_back(OaswEvent{kind, i, acc_now, acc_ref});
    };

    if (state_ == OaswStateKind::Normal && acc_now < params_.alpha * acc_ref) {
        append_once();
        state_ = OaswStateKind::Warning;
        emit(OaswEventKind::WarningEntered);
    }

    // Deliberately not an else-if: a catastrophic window may pass
    // Normal -> Warning -> Drift within one step.
    if (state_ == OaswStateKind::Warning) {
        const std::size_t collected = adaptive_window_.size();
        if (acc_now < params_.beta * acc_ref) {
            state_ = OaswStateKind::Drift;
            drift_index_ = i;
            baseline_recorded_ = false;
            emit(OaswEventKind::DriftDetected);
            if (adaptive_window_.size() >= trainer_->min_fit_size()) {
                refit();
                emit(OaswEventKind::RetrainedOnDrift);
            } else {
                retrain_pending_ = true;
            }
        } else if (acc_now >= params_.alpha * acc_ref || collected == params_.t_prime_max) {
            adaptive_window_.clear();
            state_ = OaswStateKind::Normal;
            emit(OaswEventKind::FalseAlarm);
            emit(OaswEventKind::WindowReleased);
        } else {
            append_once();
        }
    }

    if (state_ == OaswStateKind::Drift) {
        if (!baseline_recorded_ && i == drift_index_ + params_.t) {
            baseline_acc_ = acc_now;
            baseline_recorded_ = true;
        }
        const bool stabilized_drop = baseline_recorded_ && acc_now < params_.alpha * baseline_acc_;
        if (stabilized_drop || adaptive_window_.size() == params_.t_prime_max) {
            refit();
            emit(OaswEventKind::StabilizationRetrain);
            emit(OaswEventKind::WindowReleased);
            adaptive_window_.clear();
            state_ = OaswStateKind::Normal;
            baseline_recorded_ = false;
            retrain_pending_ = false;
        } else {
            append_once();
            if (retrain_pending_ && adaptive_window_.size() >= trainer_->min_fit_size()) {
                refit();
                emit(OaswEventKind::RetrainedOnDrift);
                retrain_pending_ = false;
            }
        }
    }
    return result;
}

std::size_t OaswEngine::live_sample_entries() const {
    return adaptive_window_.size() + ring_.stored();
}

std::size_t OaswEngine::memory_bytes() const {
    std::size_t bytes = sizeof(OaswEngine) + ring_.capacity() * sizeof(std::uint8_t);
    bytes += adaptive_window_.capacity() * sizeof(LabeledSample);
    for (const auto& s : adaptive_window_) bytes += s.features.capacity() * sizeof(double);
    bytes += model_->struct_bytes();
    return bytes;
}

RunResult run_stream(std::shared_ptr<const BinaryClassifier> model,
                     std::shared_ptr<const ClassifierTrainer> trainer, StreamSource stream,
                     const OaswParams& params) {
    OaswEngine engine(std::move(model), std::move(trainer), params);
    RunResult result;
    result.trace = prequential_evaluate(engine, std::move(stream));
    result.avg_accuracy = result.trace.metrics.accuracy;
    return result;
}

double run_average_accuracy(std::shared_ptr<const BinaryClassifier> model,
                            std::shared_ptr<const ClassifierTrainer> trainer, StreamSource stream,
                            const OaswParams& params) {
    if (stream.empty()) throw DataError("run_average_accuracy: empty stream");
    OaswEngine engine(std::move(model), std::move(trainer), params);
    stream.rewind();
    std::size_t correct = 0;
    while (!stream.done()) {
        const LabeledSample& sample = stream.next();
        const int predicted = engine.predict(sample.features);
        correct += engine.observe(sample, predicted).correct ? 1 : 0;
    }
    return static_cast<double>(correct) / static_cast<double>(stream.size());
}

} // namespace oasw
