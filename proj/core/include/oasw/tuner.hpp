#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <vector>

#include "oasw/classifier.hpp"
#include "oasw/engine.hpp"
#include "oasw/gbdt.hpp"
#include "oasw/pso.hpp"
#include "oasw/stream.hpp"

namespace oasw {

/// Default search ranges for the five classifier hyperparameters:
/// n_estimators [50, 500], max_depth [5, 50], learning_rate (0, 1),
/// num_leaves [100, 2000], min_data_in_leaf [10, 50].
HyperParamSpace default_classifier_space();

/// Default search ranges for the engine thresholds and windows:
/// alpha (0.95, 1), beta (0.90, 1), t [100, 1000], t_prime_max [500, 5000].
HyperParamSpace default_oasw_space();

OaswParams oasw_params_from_position(const HyperParamSpace& space,
                                     const std::vector<double>& position);
ClassifierParams classifier_params_from_position(const HyperParamSpace& space,
                                                 const std::vector<double>& position,
                                                 std::uint64_t seed);

struct OaswTuneResult {
    OaswParams best;
    double max_accuracy = 0.0;
    PsoResult search;
};

/// Tunes {alpha, beta, t, t_prime_max}: each candidate replays the stream
/// through a fresh engine seeded with the given offline model and is scored
/// by average prequential accuracy. Candidates with beta >= alpha are
/// repaired by resampling beta below alpha; t_prime_max is raised to t when
/// needed. tune_fraction < 1 restricts scoring to a stream prefix, which
/// avoids tuning on the exact stream later used for reporting.
OaswTuneResult tune_oasw(const StreamSource& stream,
                         std::shared_ptr<const BinaryClassifier> model,
                         std::shared_ptr<const ClassifierTrainer> trainer,
                         const HyperParamSpace& space, const PsoConfig& config,
                         double tune_fraction = 1.0);

struct ClassifierTuneResult {
    ClassifierParams best;
    double mean_validation_accuracy = 0.0;
    PsoResult search;
};

/// Tunes the five classifier hyperparameters by forward-chaining validation
/// on the offline split: the split is cut into folds+1 sequential chunks;
/// fold j trains on chunks [0, j) and validates on chunk j. The objective
/// is the mean of the fold accuracies.
ClassifierTuneResult tune_classifier(std::span<const LabeledSample> offline,
                                     const HyperParamSpace& space, const PsoConfig& config,
                                     std::size_t folds, std::uint64_t model_seed);

/// One row per objective evaluation: evaluation_index, the canonical
/// position per dimension, score.
void write_tuning_trace_csv(const HyperParamSpace& space, const PsoResult& result,
                            const std::filesystem::path& path);

} // namespace oasw
