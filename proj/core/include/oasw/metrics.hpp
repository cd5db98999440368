#pragma once

#include <cstdint>

namespace oasw {

/// Binary confusion counts; the positive class (attack/anomaly) is label 1.
struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fn = 0;

    std::uint64_t total() const { return tp + fp + tn + fn; }
    void add(int predicted, int actual);
};

/// Ratio metrics as fractions in [0, 1]. A ratio whose denominator is zero
/// is reported as 0 with its `*_defined` flag cleared.
struct Metrics {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    bool precision_defined = true;
    bool recall_defined = true;
    bool f1_defined = true;
};

Metrics compute_metrics(const ConfusionCounts& counts);

} // namespace oasw
