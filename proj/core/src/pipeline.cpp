#include "oasw/pipeline.hpp"

#include "oasw/error.hpp"

namespace oasw {

std::string to_string(OaswEventKind kind) {
    switch (kind) {
    case OaswEventKind::WarningEntered: return "WarningEntered";
    case OaswEventKind::FalseAlarm: return "FalseAlarm";
    case OaswEventKind::DriftDetected: return "DriftDetected";
    case OaswEventKind::RetrainedOnDrift: return "RetrainedOnDrift";
    case OaswEventKind::StabilizationRetrain: return "StabilizationRetrain";
    case OaswEventKind::WindowReleased: return "WindowReleased";
    }
    throw RuntimeFailure("unknown OaswEventKind");
}

StaticModelPipeline::StaticModelPipeline(std::shared_ptr<const BinaryClassifier> model,
                                         std::size_t report_window)
    : model_(std::move(model)), report_window_(report_window) {
    if (!model_) throw ConfigError("StaticModelPipeline: model must not be null");
    if (report_window_ == 0) throw ConfigError("StaticModelPipeline: report window must be >= 1");
}

int StaticModelPipeline::predict(std::span<const double> features) {
    return model_->predict(features).label;
}

StepResult StaticModelPipeline::observe(const LabeledSample& sample, int predicted) {
    return StepResult{predicted == sample.label, {}};
}

std::size_t StaticModelPipeline::memory_bytes() const {
    return sizeof(*this) + model_->struct_bytes();
}

} // namespace oasw
