#pragma once

#include <cstddef>
#include <memory>
#include <span>

#include "oasw/stream.hpp"

namespace oasw {

struct Prediction {
    int label = 0;
    double probability = 0.5; // P(label == 1), always in (0, 1)
};

/// Immutable fitted model: safe to share read-only across threads.
class BinaryClassifier {
public:
    virtual ~BinaryClassifier() = default;
    virtual Prediction predict(std::span<const double> features) const = 0;
    virtual std::size_t schema_width() const = 0;
    /// Deterministic structural size accounting (for the memory proxy),
    /// not an RSS measurement.
    virtual std::size_t struct_bytes() const = 0;
};

/// Fit-from-scratch factory. Retraining never mutates an existing model;
/// it produces a fresh one from the provided window.
class ClassifierTrainer {
public:
    virtual ~ClassifierTrainer() = default;
    virtual std::shared_ptr<const BinaryClassifier>
    fit(std::span<const LabeledSample> samples) const = 0;

    /// Smallest window the trainer considers viable; drift retrains are
    /// deferred until the adaptive window has at least this many samples.
    virtual std::size_t min_fit_size() const { return 10; }
};

} // namespace oasw
