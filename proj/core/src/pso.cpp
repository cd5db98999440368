#include "oasw/pso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <thread>

#include "oasw/error.hpp"

namespace oasw {
namespace {

constexpr double kOpenBoundNudge = 1e-6;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

} // namespace

void HyperParamSpace::validate() const {
    if (dims.empty()) throw ConfigError("hyperparameter space is empty");
    std::set<std::string> names;
    for (const auto& dim : dims) {
        if (dim.name.empty()) throw ConfigError("hyperparameter dimension without a name");
        if (!(dim.low < dim.high)) {
            throw ConfigError("dimension '" + dim.name + "': low must be < high");
        }
        if (!names.insert(dim.name).second) {
            throw ConfigError("duplicate dimension name '" + dim.name + "'");
        }
    }
}

std::size_t HyperParamSpace::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (dims[i].name == name) return i;
    }
    throw ConfigError("no dimension named '" + name + "'");
}

std::vector<double> HyperParamSpace::canonical(std::vector<double> position) const {
    if (position.size() != dims.size()) {
        throw ConfigError("position width does not match space dimensionality");
    }
    for (std::size_t j = 0; j < dims.size(); ++j) {
        const auto& dim = dims[j];
        const double lo = dim.low + (dim.open_low ? kOpenBoundNudge : 0.0);
        const double hi = dim.high - (dim.open_high ? kOpenBoundNudge : 0.0);
        double x = std::clamp(position[j], lo, hi);
        if (dim.kind == HyperParamDim::Kind::Integer) {
            x = std::clamp(std::round(x), std::ceil(lo), std::floor(hi));
        }
        position[j] = x;
    }
    return position;
}

void PsoConfig::validate() const {
    if (swarm_size < 2) throw ConfigError("pso: swarm_size must be >= 2");
    if (max_evaluations < swarm_size) {
        throw ConfigError("pso: max_evaluations must be >= swarm_size");
    }
    if (!(inertia >= 0.0) || !(cognitive >= 0.0) || !(social >= 0.0)) {
        throw ConfigError("pso: coefficients must be nonnegative");
    }
    if (!(velocity_clamp_fraction > 0.0 && velocity_clamp_fraction <= 1.0)) {
        throw ConfigError("pso: velocity_clamp_fraction must lie in (0, 1]");
    }
    if (jobs == 0) throw ConfigError("pso: jobs must be >= 1");
}

namespace {

struct Particle {
    std::vector<double> position;
    std::vector<double> velocity;
    std::vector<double> best_position; // canonical
    double best_score = kNegInf;
};

std::vector<double> batch_scores(const PsoObjective& objective,
                                 const std::vector<std::vector<double>>& candidates,
                                 std::size_t first_eval_index, std::size_t jobs) {
    std::vector<double> scores(candidates.size(), kNegInf);
    auto eval_one = [&](std::size_t k) {
        double s = kNegInf;
        try {
            s = objective(candidates[k], first_eval_index + k);
        } catch (...) {
            s = kNegInf;
        }
        if (std::isnan(s)) s = kNegInf;
        scores[k] = s;
    };

    if (jobs <= 1 || candidates.size() <= 1) {
        for (std::size_t k = 0; k < candidates.size(); ++k) eval_one(k);
        return scores;
    }
    const std::size_t workers = std::min(jobs, candidates.size());
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t k = w; k < candidates.size(); k += workers) eval_one(k);
        });
    }
    for (auto& th : pool) th.join();
    return scores;
}

} // namespace

PsoResult pso_maximize(const HyperParamSpace& space, const PsoObjective& objective,
                       const PsoConfig& config, const PsoRepair& repair) {
    space.validate();
    config.validate();
    if (!objective) throw ConfigError("pso: objective must be callable");

    const std::size_t d = space.dims.size();
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<double> vmax(d);
    for (std::size_t j = 0; j < d; ++j) {
        vmax[j] = config.velocity_clamp_fraction * (space.dims[j].high - space.dims[j].low);
    }

    std::vector<Particle> swarm(config.swarm_size);
    for (auto& p : swarm) {
        p.position.resize(d);
        p.velocity.resize(d);
        for (std::size_t j = 0; j < d; ++j) {
            const auto& dim = space.dims[j];
            p.position[j] = dim.low + unit(rng) * (dim.high - dim.low);
            p.velocity[j] = (2.0 * unit(rng) - 1.0) * vmax[j];
        }
    }

    PsoResult result;
    result.best_score = kNegInf;
    result.best_score_history.reserve(config.max_evaluations);
    result.evaluations.reserve(config.max_evaluations);

    std::size_t evals_done = 0;
    bool first_iteration = true;
    while (evals_done < config.max_evaluations) {
        if (!first_iteration) {
            for (auto& p : swarm) {
                for (std::size_t j = 0; j < d; ++j) {
                    const double r1 = unit(rng);
                    const double r2 = unit(rng);
                    const double towards_own = p.best_position.empty()
                                                   ? 0.0
                                                   : p.best_position[j] - p.position[j];
                    const double towards_best = result.best_position.empty()
                                                    ? 0.0
                                                    : result.best_position[j] - p.position[j];
                    double v = config.inertia * p.velocity[j] +
                               config.cognitive * r1 * towards_own +
                               config.social * r2 * towards_best;
                    v = std::clamp(v, -vmax[j], vmax[j]);
                    p.velocity[j] = v;
                    p.position[j] =
                        std::clamp(p.position[j] + v, space.dims[j].low, space.dims[j].high);
                }
            }
        }
        first_iteration = false;

        const std::size_t count =
            std::min(config.swarm_size, config.max_evaluations - evals_done);
        std::vector<std::vector<double>> candidates(count);
        for (std::size_t k = 0; k < count; ++k) {
            candidates[k] = space.canonical(swarm[k].position);
            if (repair) candidates[k] = repair(std::move(candidates[k]), evals_done + k);
        }

        const std::vector<double> scores =
            batch_scores(objective, candidates, evals_done, config.jobs);

        // Synchronous update: the batch was generated against the previous
        // global best; bests advance only after all scores are in.
        for (std::size_t k = 0; k < count; ++k) {
            result.evaluations.push_back(PsoEvaluation{candidates[k], scores[k]});
            if (scores[k] > swarm[k].best_score || swarm[k].best_position.empty()) {
                swarm[k].best_score = scores[k];
                swarm[k].best_position = candidates[k];
            }
            if (scores[k] > result.best_score || result.best_position.empty()) {
                result.best_score = scores[k];
                result.best_position = candidates[k];
            }
            result.best_score_history.push_back(result.best_score);
        }
        evals_done += count;
    }
    return result;
}

} // namespace oasw
