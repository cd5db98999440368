#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oasw/stream.hpp"

namespace oasw {

enum class DriftKind { Sudden, Gradual, Recurring };

std::string to_string(DriftKind kind);
DriftKind drift_kind_from_string(const std::string& name);

/// Two generative concepts, each a pair of class-conditional Gaussian blobs;
/// drift swaps the class-to-blob assignment, so a model fitted to one
/// concept scores near-zero on the other. Label noise (if any) flips the
/// recorded label after the features are drawn.
struct SyntheticDriftSpec {
    DriftKind kind = DriftKind::Sudden;
    std::vector<std::size_t> change_points; // sudden/gradual only, strictly increasing
    std::size_t transition_width = 0;       // gradual only, samples per ramp
    std::size_t period = 0;                 // recurring only, samples per concept phase
    double noise_rate = 0.0;                // label flip probability, in [0, 0.5)
    std::size_t dims = 2;
    double class_separation = 2.0; // blob centers at +/- this per dimension
    std::uint64_t seed = 1;

    void validate(std::size_t length) const;
};

StreamSource generate_synthetic(const SyntheticDriftSpec& spec, std::size_t length);

} // namespace oasw
