#include "oasw/detectors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "oasw/error.hpp"

namespace oasw {

std::string to_string(SignalLevel level) {
    switch (level) {
    case SignalLevel::InControl: return "InControl";
    case SignalLevel::Warning: return "Warning";
    case SignalLevel::Drift: return "Drift";
    }
    throw RuntimeFailure("unknown SignalLevel");
}

DdmDetector::DdmDetector(Params params) : params_(params) {
    if (!(params_.warning_sigma > 0.0) || !(params_.drift_sigma > params_.warning_sigma)) {
        throw ConfigError("ddm: need 0 < warning_sigma < drift_sigma");
    }
    if (params_.min_samples < 1) throw ConfigError("ddm: min_samples must be >= 1");
    if (params_.variance_floor_n < 1) throw ConfigError("ddm: variance_floor_n must be >= 1");
}

void DdmDetector::reset() {
    n_ = 0;
    p_ = 0.0;
    min_p_ = 0.0;
    min_s_ = 0.0;
    min_set_ = false;
}

SignalLevel DdmDetector::update(bool error) {
    ++n_;
    p_ += ((error ? 1.0 : 0.0) - p_) / static_cast<double>(n_);
    if (n_ < params_.min_samples) return SignalLevel::InControl;

    const double s = std::sqrt(p_ * (1.0 - p_) / static_cast<double>(n_));
    // A zero-error history has p + s = 0, a degenerate minimum that would
    // flag the very first mistake; minima are tracked only once an error
    // has been observed.
    if (p_ > 0.0 && (!min_set_ || p_ + s < min_p_ + min_s_)) {
        min_p_ = p_;
        min_s_ = s;
        min_set_ = true;
    }
    if (!min_set_) return SignalLevel::InControl;
    const double floor =
        std::sqrt(min_p_ * (1.0 - min_p_) / static_cast<double>(params_.variance_floor_n));
    const double band_s = std::max(min_s_, floor);
    if (p_ + s > min_p_ + params_.drift_sigma * band_s) {
        reset();
        return SignalLevel::Drift;
    }
    if (p_ + s > min_p_ + params_.warning_sigma * band_s) return SignalLevel::Warning;
    return SignalLevel::InControl;
}

EddmDetector::EddmDetector(Params params) : params_(params) {
    if (!(params_.drift_ratio > 0.0) || !(params_.warning_ratio > params_.drift_ratio) ||
        !(params_.warning_ratio < 1.0)) {
        throw ConfigError("eddm: need 0 < drift_ratio < warning_ratio < 1");
    }
    if (params_.min_errors < 2) throw ConfigError("eddm: min_errors must be >= 2");
}

void EddmDetector::reset() {
    n_ = 0;
    errors_ = 0;
    last_error_at_ = 0;
    gap_mean_ = 0.0;
    gap_m2_ = 0.0;
    max_score_ = 0.0;
    max_set_ = false;
}

SignalLevel EddmDetector::update(bool error) {
    ++n_;
    if (!error) return SignalLevel::InControl;

    ++errors_;
    if (errors_ == 1) {
        last_error_at_ = n_;
        return SignalLevel::InControl;
    }
    const auto gap = static_cast<double>(n_ - last_error_at_);
    last_error_at_ = n_;

    const auto gap_count = static_cast<double>(errors_ - 1);
    const double delta = gap - gap_mean_;
    gap_mean_ += delta / gap_count;
    gap_m2_ += delta * (gap - gap_mean_);

    const double s = std::sqrt(gap_m2_ / gap_count);
    const double score = gap_mean_ + 2.0 * s;
    if (!max_set_ || score > max_score_) {
        max_score_ = score;
        max_set_ = true;
    }
    if (errors_ < params_.min_errors || max_score_ <= 0.0) return SignalLevel::InControl;

    const double ratio = score / max_score_;
    if (ratio < params_.drift_ratio) {
        reset();
        return SignalLevel::Drift;
    }
    if (ratio < params_.warning_ratio) return SignalLevel::Warning;
    return SignalLevel::InControl;
}

AdwinDetector::AdwinDetector(Params params) : params_(params) {
    if (!(params_.delta > 0.0 && params_.delta < 1.0)) {
        throw ConfigError("adwin: delta must lie in (0, 1)");
    }
    if (params_.max_buckets_per_row < 2) {
        throw ConfigError("adwin: max_buckets_per_row must be >= 2");
    }
    if (params_.min_sub_length < 1) throw ConfigError("adwin: min_sub_length must be >= 1");
    rows_.emplace_back();
}

void AdwinDetector::reset() {
    rows_.clear();
    rows_.emplace_back();
    width_ = 0;
    total_ = 0.0;
    variance_ = 0.0;
}

double AdwinDetector::mean() const {
    return width_ == 0 ? 0.0 : total_ / static_cast<double>(width_);
}

std::size_t AdwinDetector::bucket_count() const {
    std::size_t count = 0;
    for (const auto& row : rows_) count += row.size();
    return count;
}

void AdwinDetector::compress() {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r].size() <= params_.max_buckets_per_row) break;
        if (r + 1 == rows_.size()) rows_.emplace_back();

        const auto n = static_cast<double>(std::size_t{1} << r);
        const Bucket a = rows_[r].front();
        rows_[r].pop_front();
        const Bucket b = rows_[r].front();
        rows_[r].pop_front();

        const double mean_a = a.total / n;
        const double mean_b = b.total / n;
        Bucket merged;
        merged.total = a.total + b.total;
        merged.variance =
            a.variance + b.variance + (n / 2.0) * (mean_a - mean_b) * (mean_a - mean_b);
        rows_[r + 1].push_back(merged);
    }
}

void AdwinDetector::drop_oldest() {
    std::size_t r = rows_.size();
    while (r > 0 && rows_[r - 1].empty()) --r;
    if (r == 0) throw RuntimeFailure("adwin: drop from empty window");
    --r;

    const auto n1 = static_cast<double>(std::size_t{1} << r);
    const Bucket bucket = rows_[r].front();
    rows_[r].pop_front();

    width_ -= std::size_t{1} << r;
    total_ -= bucket.total;
    if (width_ > 0) {
        const double u1 = bucket.total / n1;
        const double u_rest = total_ / static_cast<double>(width_);
        variance_ -= bucket.variance + n1 * static_cast<double>(width_) * (u1 - u_rest) *
                                           (u1 - u_rest) / (n1 + static_cast<double>(width_));
        if (variance_ < 0.0) variance_ = 0.0;
    } else {
        variance_ = 0.0;
    }
    while (rows_.size() > 1 && rows_.back().empty()) rows_.pop_back();
}

bool AdwinDetector::cut_significant(double n0, double mean0, double n1, double mean1) const {
    const auto n = static_cast<double>(width_);
    const double dd = std::log(2.0 * std::log(n) / params_.delta);
    const double v = variance_ / n;
    const auto mins = static_cast<double>(params_.min_sub_length);
    const double m = 1.0 / (n0 - mins + 1.0) + 1.0 / (n1 - mins + 1.0);
    const double eps = std::sqrt(2.0 * m * v * dd) + (2.0 / 3.0) * dd * m;
    return std::abs(mean0 - mean1) > eps;
}

bool AdwinDetector::try_cut() {
    const auto mins = static_cast<double>(params_.min_sub_length);
    bool dropped = false;
    bool again = true;
    while (again && width_ >= 2 * params_.min_sub_length) {
        again = false;
        double n0 = 0.0;
        double sum0 = 0.0;
        // Scan boundaries oldest to newest; the older subwindow grows.
        for (std::size_t r = rows_.size(); r-- > 0 && !again;) {
            const auto size = static_cast<double>(std::size_t{1} << r);
            for (const Bucket& bucket : rows_[r]) {
                n0 += size;
                sum0 += bucket.total;
                const double n1 = static_cast<double>(width_) - n0;
                if (n1 <= 0.0) break;
                if (n0 < mins || n1 < mins) continue;
                if (cut_significant(n0, sum0 / n0, n1, (total_ - sum0) / n1)) {
                    drop_oldest();
                    dropped = true;
                    again = true;
                    break;
                }
            }
        }
    }
    return dropped;
}

SignalLevel AdwinDetector::update(double value) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw DataError("adwin: value outside [0, 1]");
    }
    if (width_ > 0) {
        const double mean = total_ / static_cast<double>(width_);
        variance_ +=
            (value - mean) * (value - mean) * static_cast<double>(width_) /
            static_cast<double>(width_ + 1);
    }
    ++width_;
    total_ += value;
    rows_[0].push_back(Bucket{value, 0.0});
    compress();
    return try_cut() ? SignalLevel::Drift : SignalLevel::InControl;
}

std::string to_string(DetectorKind kind) {
    switch (kind) {
    case DetectorKind::Ddm: return "ddm";
    case DetectorKind::Eddm: return "eddm";
    case DetectorKind::Adwin: return "adwin";
    }
    throw RuntimeFailure("unknown DetectorKind");
}

DetectorKind detector_from_string(const std::string& name) {
    if (name == "ddm") return DetectorKind::Ddm;
    if (name == "eddm") return DetectorKind::Eddm;
    if (name == "adwin") return DetectorKind::Adwin;
    throw ConfigError("unknown detector '" + name + "' (valid: ddm, eddm, adwin)");
}

DetectorPipeline::DetectorPipeline(std::shared_ptr<const BinaryClassifier> model,
                                   std::shared_ptr<const ClassifierTrainer> trainer,
                                   DetectorKind kind, std::size_t retrain_window,
                                   std::size_t report_window, DdmDetector::Params ddm,
                                   EddmDetector::Params eddm, AdwinDetector::Params adwin)
    : model_(std::move(model)), trainer_(std::move(trainer)), kind_(kind),
      retrain_window_(retrain_window), report_window_(report_window), ddm_(ddm), eddm_(eddm),
      adwin_(adwin), ring_(2 * report_window) {
    if (!model_) throw ConfigError("DetectorPipeline: model must not be null");
    if (!trainer_) throw ConfigError("DetectorPipeline: trainer must not be null");
    if (retrain_window_ == 0) throw ConfigError("DetectorPipeline: retrain window must be >= 1");
    if (report_window_ == 0) throw ConfigError("DetectorPipeline: report window must be >= 1");
}

int DetectorPipeline::predict(std::span<const double> features) {
    return model_->predict(features).label;
}

SignalLevel DetectorPipeline::feed(bool correct) {
    switch (kind_) {
    case DetectorKind::Ddm: return ddm_.update(!correct);
    case DetectorKind::Eddm: return eddm_.update(!correct);
    case DetectorKind::Adwin: return adwin_.update(correct ? 1.0 : 0.0);
    }
    throw RuntimeFailure("unknown DetectorKind");
}

StepResult DetectorPipeline::observe(const LabeledSample& sample, int predicted) {
    StepResult result;
    result.correct = predicted == sample.label;

    const std::size_t i = seen_;
    ring_.push(result.correct);
    ++seen_;

    recent_.push_back(sample);
    if (recent_.size() > retrain_window_) recent_.pop_front();

    double acc_now = 0.0;
    double acc_ref = 0.0;
    if (i >= 2 * report_window_) {
        acc_now = ring_.window_accuracy(i, report_window_);
        acc_ref = ring_.window_accuracy(i - report_window_, report_window_);
    }
    auto emit = [&](OaswEventKind kind) {
        result.events.push_back(OaswEvent{kind, i, acc_now, acc_ref});
    };

    const SignalLevel level = feed(result.correct);
    if (level == SignalLevel::Warning && last_level_ != SignalLevel::Warning) {
        signals_.push_back(DriftSignal{level, i});
        emit(OaswEventKind::WarningEntered);
    }
    if (level == SignalLevel::Drift) {
        signals_.push_back(DriftSignal{level, i});
        emit(OaswEventKind::DriftDetected);
        if (recent_.size() >= trainer_->min_fit_size()) {
            const std::vector<LabeledSample> window(recent_.begin(), recent_.end());
            const auto start = std::chrono::steady_clock::now();
            model_ = trainer_->fit(window);
            const auto stop = std::chrono::steady_clock::now();
            retrain_ms_ += std::chrono::duration<double, std::milli>(stop - start).count();
            ++retrain_count_;
            emit(OaswEventKind::RetrainedOnDrift);
        }
    }
    last_level_ = level;
    return result;
}

std::size_t DetectorPipeline::live_sample_entries() const {
    return recent_.size() + ring_.stored();
}

std::size_t DetectorPipeline::memory_bytes() const {
    std::size_t bytes = sizeof(DetectorPipeline) + ring_.capacity() * sizeof(std::uint8_t);
    bytes += recent_.size() * sizeof(LabeledSample);
    for (const auto& s : recent_) bytes += s.features.capacity() * sizeof(double);
    bytes += adwin_.bucket_count() * sizeof(double) * 2;
    bytes += model_->struct_bytes();
    return bytes;
}

EvaluationReport detect_and_retrain(StreamSource stream,
                                    std::shared_ptr<const BinaryClassifier> model,
                                    std::shared_ptr<const ClassifierTrainer> trainer,
                                    DetectorKind kind, std::size_t retrain_window,
                                    std::size_t report_window) {
    DetectorPipeline pipeline(std::move(model), std::move(trainer), kind, retrain_window,
                              report_window);
    return prequential_evaluate(pipeline, std::move(stream));
}

} // namespace oasw
