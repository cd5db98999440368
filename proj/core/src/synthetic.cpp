#include "oasw/synthetic.hpp"

#include <algorithm>
#include <random>

#include "oasw/error.hpp"

namespace oasw {

std::string to_string(DriftKind kind) {
    switch (kind) {
    case DriftKind::Sudden: return "sudden";
    case DriftKind::Gradual: return "gradual";
    case DriftKind::Recurring: return "recurring";
    }
    return "unknown";
}

DriftKind drift_kind_from_string(const std::string& name) {
    if (name == "sudden") return DriftKind::Sudden;
    if (name == "gradual") return DriftKind::Gradual;
    if (name == "recurring") return DriftKind::Recurring;
    throw ConfigError("unknown drift kind '" + name + "' (expected sudden|gradual|recurring)");
}

void SyntheticDriftSpec::validate(std::size_t length) const {
    if (length == 0) throw ConfigError("synthetic stream length must be > 0");
    if (dims == 0) throw ConfigError("synthetic dims must be > 0");
    if (!(noise_rate >= 0.0 && noise_rate < 0.5)) {
        throw ConfigError("noise_rate must lie in [0, 0.5)");
    }
    if (!std::is_sorted(change_points.begin(), change_points.end()) ||
        std::adjacent_find(change_points.begin(), change_points.end()) != change_points.end()) {
        throw ConfigError("change_points must be strictly increasing");
    }
    if (!change_points.empty() && change_points.back() >= length) {
        throw ConfigError("length must exceed the last change point");
    }
    switch (kind) {
    case DriftKind::Sudden:
        if (transition_width != 0) throw ConfigError("sudden drift takes no transition_width");
        if (period != 0) throw ConfigError("sudden drift takes no period");
        if (change_points.empty()) throw ConfigError("sudden drift needs change_points");
        break;
    case DriftKind::Gradual:
        if (transition_width == 0) throw ConfigError("gradual drift needs transition_width > 0");
        if (period != 0) throw ConfigError("gradual drift takes no period");
        if (change_points.empty()) throw ConfigError("gradual drift needs change_points");
        break;
    case DriftKind::Recurring:
        if (period == 0) throw ConfigError("recurring drift needs period > 0");
        if (transition_width != 0) throw ConfigError("recurring drift takes no transition_width");
        if (!change_points.empty()) {
            throw ConfigError("recurring drift alternates by period; change_points must be empty");
        }
        break;
    }
}

StreamSource generate_synthetic(const SyntheticDriftSpec& spec, std::size_t length) {
    spec.validate(length);

    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<LabeledSample> samples;
    samples.reserve(length);
    for (std::size_t i = 0; i < length; ++i) {
        const int label = uniform(rng) < 0.5 ? 0 : 1;

        int concept_id = 0;
        switch (spec.kind) {
        case DriftKind::Sudden: {
            for (std::size_t cp : spec.change_points) {
                if (i >= cp) concept_id ^= 1;
            }
            break;
        }
        case DriftKind::Gradual: {
            // Each ramp linearly raises the chance of drawing from the
            // flipped concept until the transition completes.
            double p_flip_total = 0.0;
            int base = 0;
            for (std::size_t cp : spec.change_points) {
                if (i >= cp + spec.transition_width) {
                    base ^= 1;
                } else if (i >= cp) {
                    p_flip_total = static_cast<double>(i - cp + 1) /
                                   static_cast<double>(spec.transition_width);
                }
            }
            concept_id = base;
            if (p_flip_total > 0.0 && uniform(rng) < p_flip_total) concept_id ^= 1;
            break;
        }
        case DriftKind::Recurring: concept_id = static_cast<int>((i / spec.period) % 2); break;
        }

        // Concept 0 sends class 0 to the negative blob; concept 1 swaps.
        const int blob = label ^ concept_id;
        const double center = blob == 0 ? -spec.class_separation : spec.class_separation;

        LabeledSample sample;
        sample.features.resize(spec.dims);
        for (std::size_t d = 0; d < spec.dims; ++d) {
            sample.features[d] = center + gauss(rng);
        }
        sample.label = label;
        if (spec.noise_rate > 0.0 && uniform(rng) < spec.noise_rate) sample.label ^= 1;
        samples.push_back(std::move(sample));
    }

    StreamSchema schema;
    schema.feature_names.reserve(spec.dims);
    for (std::size_t d = 0; d < spec.dims; ++d) schema.feature_names.push_back("f" + std::to_string(d));
    return StreamSource(std::move(schema), std::move(samples));
}

} // namespace oasw
