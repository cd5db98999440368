#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace oasw {

struct HyperParamDim {
    enum class Kind { Integer, Real };

    std::string name;
    Kind kind = Kind::Real;
    double low = 0.0;
    double high = 1.0;
    bool open_low = false;
    bool open_high = false;
};

struct HyperParamSpace {
    std::vector<HyperParamDim> dims;

    void validate() const; // low < high per dim, names unique, non-empty
    std::size_t index_of(const std::string& name) const; // throws if absent

    /// Maps a raw position into the evaluable domain: clamp to bounds
    /// (open bounds nudged inward by 1e-6 of nothing less than the bound
    /// itself), then round integer dims.
    std::vector<double> canonical(std::vector<double> position) const;
};

struct PsoConfig {
    std::size_t swarm_size = 20;
    double inertia = 0.7298;
    double cognitive = 1.4962;
    double social = 1.4962;
    double velocity_clamp_fraction = 0.2; // of each dim's range
    std::size_t max_evaluations = 400;    // total objective-call budget
    std::uint64_t seed = 1;
    std::size_t jobs = 1;

    void validate() const; // swarm_size >= 2, max_evaluations >= swarm_size
};

struct PsoEvaluation {
    std::vector<double> position; // canonical (repaired, rounded)
    double score = 0.0;
};

struct PsoResult {
    std::vector<double> best_position; // canonical
    double best_score = 0.0;
    /// Best-so-far after each evaluation; nondecreasing by construction.
    std::vector<double> best_score_history;
    std::vector<PsoEvaluation> evaluations; // in evaluation order
};

/// score = objective(canonical_position, evaluation_index); higher is better.
using PsoObjective = std::function<double(const std::vector<double>&, std::size_t)>;

/// Domain-specific constraint repair applied after canonicalization; the
/// repaired vector is what gets evaluated and recorded. The evaluation
/// index makes seeded resampling repairs deterministic.
using PsoRepair = std::function<std::vector<double>(std::vector<double>, std::size_t)>;

/// Synchronous-iteration particle swarm search, maximizing the objective.
/// Makes exactly config.max_evaluations objective calls; an objective that
/// throws scores that evaluation as -infinity and the search continues.
PsoResult pso_maximize(const HyperParamSpace& space, const PsoObjective& objective,
                       const PsoConfig& config, const PsoRepair& repair = {});

} // namespace oasw
