#include "oasw/tuner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "oasw/error.hpp"
#include "oasw/util.hpp"

namespace oasw {

HyperParamSpace default_classifier_space() {
    HyperParamSpace space;
    space.dims = {
        {"n_estimators", HyperParamDim::Kind::Integer, 50.0, 500.0, false, false},
        {"max_depth", HyperParamDim::Kind::Integer, 5.0, 50.0, false, false},
        {"learning_rate", HyperParamDim::Kind::Real, 0.0, 1.0, true, true},
        {"num_leaves", HyperParamDim::Kind::Integer, 100.0, 2000.0, false, false},
        {"min_data_in_leaf", HyperParamDim::Kind::Integer, 10.0, 50.0, false, false},
    };
    return space;
}

HyperParamSpace default_oasw_space() {
    HyperParamSpace space;
    space.dims = {
        {"alpha", HyperParamDim::Kind::Real, 0.95, 1.0, true, true},
        {"beta", HyperParamDim::Kind::Real, 0.90, 1.0, true, true},
        {"t", HyperParamDim::Kind::Integer, 100.0, 1000.0, false, false},
        {"t_prime_max", HyperParamDim::Kind::Integer, 500.0, 5000.0, false, false},
    };
    return space;
}

OaswParams oasw_params_from_position(const HyperParamSpace& space,
                                     const std::vector<double>& position) {
    OaswParams params;
    params.alpha = position.at(space.index_of("alpha"));
    params.beta = position.at(space.index_of("beta"));
    params.t = static_cast<std::size_t>(position.at(space.index_of("t")));
    params.t_prime_max = static_cast<std::size_t>(position.at(space.index_of("t_prime_max")));
    return params;
}

ClassifierParams classifier_params_from_position(const HyperParamSpace& space,
                                                 const std::vector<double>& position,
                                                 std::uint64_t seed) {
    ClassifierParams params;
    params.n_estimators = static_cast<int>(position.at(space.index_of("n_estimators")));
    params.max_depth = static_cast<int>(position.at(space.index_of("max_depth")));
    params.learning_rate = position.at(space.index_of("learning_rate"));
    params.num_leaves = static_cast<int>(position.at(space.index_of("num_leaves")));
    params.min_data_in_leaf = static_cast<int>(position.at(space.index_of("min_data_in_leaf")));
    params.seed = seed;
    return params;
}

OaswTuneResult tune_oasw(const StreamSource& stream,
                         std::shared_ptr<const BinaryClassifier> model,
                         std::shared_ptr<const ClassifierTrainer> trainer,
                         const HyperParamSpace& space, const PsoConfig& config,
                         double tune_fraction) {
    if (stream.empty()) throw DataError("tune_oasw: empty stream");
    if (!model) throw ConfigError("tune_oasw: model must not be null");
    if (!trainer) throw ConfigError("tune_oasw: trainer must not be null");
    if (!(tune_fraction > 0.0 && tune_fraction <= 1.0)) {
        throw ConfigError("tune_oasw: tune_fraction must lie in (0, 1]");
    }
    const std::size_t alpha_dim = space.index_of("alpha");
    const std::size_t beta_dim = space.index_of("beta");
    const std::size_t t_dim = space.index_of("t");
    const std::size_t cap_dim = space.index_of("t_prime_max");

    StreamSource scored = stream.clone();
    if (tune_fraction < 1.0) {
        const auto keep = std::max<std::size_t>(
            1, static_cast<std::size_t>(
                   std::ceil(tune_fraction * static_cast<double>(stream.size()))));
        std::vector<LabeledSample> prefix(stream.samples().begin(),
                                          stream.samples().begin() +
                                              static_cast<std::ptrdiff_t>(keep));
        scored = StreamSource(stream.schema(), std::move(prefix));
    }

    const double beta_low = space.dims[beta_dim].low;
    PsoRepair repair = [&, beta_low](std::vector<double> x, std::size_t eval_index) {
        if (x[beta_dim] >= x[alpha_dim]) {
            std::mt19937_64 rng(mix_seed(config.seed, 0x0a5f0000u + eval_index));
            std::uniform_real_distribution<double> u(beta_low + 1e-6, x[alpha_dim]);
            double resampled = u(rng);
            if (resampled >= x[alpha_dim]) resampled = std::nextafter(x[alpha_dim], 0.0);
            x[beta_dim] = resampled;
        }
        if (x[cap_dim] < x[t_dim]) x[cap_dim] = x[t_dim];
        return x;
    };

    PsoObjective objective = [&](const std::vector<double>& x, std::size_t) {
        const OaswParams params = oasw_params_from_position(space, x);
        return run_average_accuracy(model, trainer, scored.clone(), params);
    };

    OaswTuneResult out;
    out.search = pso_maximize(space, objective, config, repair);
    out.best = oasw_params_from_position(space, out.search.best_position);
    out.max_accuracy = out.search.best_score;
    return out;
}

ClassifierTuneResult tune_classifier(std::span<const LabeledSample> offline,
                                     const HyperParamSpace& space, const PsoConfig& config,
                                     std::size_t folds, std::uint64_t model_seed) {
    if (folds < 1) throw ConfigError("tune_classifier: folds must be >= 1");
    const std::size_t min_leaf_bound =
        static_cast<std::size_t>(space.dims[space.index_of("min_data_in_leaf")].high);
    if (offline.size() < folds * min_leaf_bound) {
        throw ConfigError("tune_classifier: offline split too small for " +
                          std::to_string(folds) + " folds");
    }

    const std::size_t chunks = folds + 1;
    std::vector<std::size_t> bounds(chunks + 1);
    for (std::size_t c = 0; c <= chunks; ++c) bounds[c] = offline.size() * c / chunks;

    PsoObjective objective = [&, offline](const std::vector<double>& x, std::size_t) {
        const ClassifierParams params = classifier_params_from_position(space, x, model_seed);
        double accuracy_sum = 0.0;
        for (std::size_t fold = 1; fold <= folds; ++fold) {
            const auto train = offline.subspan(0, bounds[fold]);
            const auto validate = offline.subspan(bounds[fold], bounds[fold + 1] - bounds[fold]);
            if (train.empty() || validate.empty()) {
                throw DataError("tune_classifier: degenerate fold");
            }
            const GbdtModel candidate = fit_gbdt(train, params);
            std::size_t correct = 0;
            for (const auto& sample : validate) {
                correct += candidate.predict(sample.features).label == sample.label ? 1 : 0;
            }
            accuracy_sum += static_cast<double>(correct) / static_cast<double>(validate.size());
        }
        return accuracy_sum / static_cast<double>(folds);
    };

    ClassifierTuneResult out;
    out.search = pso_maximize(space, objective, config);
    out.best = classifier_params_from_position(space, out.search.best_position, model_seed);
    out.mean_validation_accuracy = out.search.best_score;
    return out;
}

void write_tuning_trace_csv(const HyperParamSpace& space, const PsoResult& result,
                            const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open for writing: " + path.string());
    out << "evaluation_index";
    for (const auto& dim : space.dims) out << ',' << dim.name;
    out << ",score\n";
    for (std::size_t k = 0; k < result.evaluations.size(); ++k) {
        out << k;
        for (const double x : result.evaluations[k].position) out << ',' << format_double(x);
        out << ',' << format_double(result.evaluations[k].score) << '\n';
    }
    if (!out) throw DataError("write failed: " + path.string());
}

} // namespace oasw
