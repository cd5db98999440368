#include "oasw/metrics.hpp"

#include "oasw/error.hpp"

namespace oasw {

void ConfusionCounts::add(int predicted, int actual) {
    if (actual == 1) {
        predicted == 1 ? ++tp : ++fn;
    } else {
        predicted == 1 ? ++fp : ++tn;
    }
}

Metrics compute_metrics(const ConfusionCounts& counts) {
    const std::uint64_t total = counts.total();
    if (total == 0) throw DataError("compute_metrics: no scored samples");

    Metrics m;
    m.accuracy = static_cast<double>(counts.tp + counts.tn) / static_cast<double>(total);

    if (counts.tp + counts.fp > 0) {
        m.precision = static_cast<double>(counts.tp) / static_cast<double>(counts.tp + counts.fp);
    } else {
        m.precision_defined = false;
    }
    if (counts.tp + counts.fn > 0) {
        m.recall = static_cast<double>(counts.tp) / static_cast<double>(counts.tp + counts.fn);
    } else {
        m.recall_defined = false;
    }
    if (m.precision + m.recall > 0.0) {
        m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    } else {
        m.f1_defined = false;
    }
    return m;
}

} // namespace oasw
