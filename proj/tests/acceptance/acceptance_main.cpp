// Acceptance gate: one self-contained check per release criterion, each
// printing a single [PASS]/[FAIL]/[SKIP] line. The process exits nonzero
// if any evaluated criterion fails. Criterion 9 needs real datasets and is
// skipped (with instructions) when the environment does not point at them.
//
// Usage:
//   oasw_acceptance                 run everything
//   oasw_acceptance --only N        run a single criterion
//   oasw_acceptance --write-golden  regenerate the criterion-10 snapshots

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "oasw/csv.hpp"
#include "oasw/detectors.hpp"
#include "oasw/engine.hpp"
#include "oasw/error.hpp"
#include "oasw/gbdt.hpp"
#include "oasw/pipeline.hpp"
#include "oasw/pso.hpp"
#include "oasw/report.hpp"
#include "oasw/stream.hpp"
#include "oasw/synthetic.hpp"
#include "oasw/util.hpp"
#include "support/scripted.hpp"

using namespace oasw;
using oasw::testing::CountingTrainer;
using oasw::testing::ThresholdClassifier;
using oasw::testing::make_flag_stream;
using oasw::testing::verify_event_log;

namespace {

// Pinned tolerances, one place to read them all.
constexpr double kSphereTolerance = 1e-2;       // criterion 4
constexpr int kSphereMinSuccesses = 95;         // criterion 4, out of 100
constexpr double kGossRelTolerance = 0.05;      // criterion 6
constexpr double kDriftRecoveryAccuracy = 0.90; // criterion 2 (adapted arm)
constexpr double kStaticCeiling = 0.60;         // criterion 2 (never-adapt arm)
constexpr int kDriftMinSeeds = 9;               // criterion 2, out of 10
constexpr int kDetectorMinSuccesses = 95;       // criterion 8, out of 100
constexpr double kMetricsTolerance = 1e-12;     // criterion 10
constexpr double kIotAccuracyFloor = 0.995;     // criterion 9
constexpr double kNslAccuracyFloor = 0.965;     // criterion 9
constexpr double kNslStaticCeiling = 0.90;      // criterion 9

enum class Status { Pass, Fail, Skip };

struct Outcome {
    Status status = Status::Fail;
    std::string detail;
};

Outcome pass(std::string detail) { return {Status::Pass, std::move(detail)}; }
Outcome fail(std::string detail) { return {Status::Fail, std::move(detail)}; }
Outcome skip(std::string detail) { return {Status::Skip, std::move(detail)}; }

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path.string());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << text;
}

double mean_correct(const std::vector<std::uint8_t>& correct, std::size_t first,
                    std::size_t last) {
    std::size_t hits = 0;
    for (std::size_t i = first; i < last; ++i) hits += correct[i];
    return static_cast<double>(hits) / static_cast<double>(last - first);
}

std::shared_ptr<const CountingTrainer> threshold_trainer(std::size_t min_fit) {
    return std::make_shared<const CountingTrainer>(
        min_fit,
        [](std::span<const LabeledSample>) { return std::make_shared<const ThresholdClassifier>(); });
}

// ---------------------------------------------------------------- C1

Outcome criterion1_state_machine() {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t streams = 1000;

    for (std::uint64_t seed = 1; seed <= streams; ++seed) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> t_dist(4, 15);
        std::uniform_real_distribution<double> alpha_dist(0.97, 0.99);
        std::uniform_real_distribution<double> beta_frac(0.5, 0.95);
        std::uniform_int_distribution<std::size_t> min_fit_dist(1, 4);
        std::uniform_int_distribution<std::size_t> length_dist(300, 700);
        std::uniform_int_distribution<std::size_t> seg_dist(20, 120);

        OaswParams params;
        params.t = t_dist(rng);
        params.alpha = alpha_dist(rng);
        params.beta = params.alpha * beta_frac(rng);
        std::uniform_int_distribution<std::size_t> cap_dist(params.t, 4 * params.t);
        params.t_prime_max = cap_dist(rng);

        // Mixed stationary/drifting stream: piecewise accuracy levels.
        static const double kLevels[] = {1.0, 0.97, 0.9, 0.75, 0.5, 0.2, 0.02};
        std::uniform_int_distribution<std::size_t> level_dist(0, 6);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const std::size_t length = length_dist(rng);
        std::vector<bool> flags;
        flags.reserve(length);
        while (flags.size() < length) {
            const double level = kLevels[level_dist(rng)];
            const std::size_t seg = seg_dist(rng);
            for (std::size_t k = 0; k < seg && flags.size() < length; ++k) {
                flags.push_back(unit(rng) < level);
            }
        }

        OaswEngine engine(std::make_shared<ThresholdClassifier>(),
                          threshold_trainer(min_fit_dist(rng)), params);
        std::vector<OaswEvent> events;
        StreamSource stream = make_flag_stream(flags);
        stream.rewind();
        while (!stream.done()) {
            const LabeledSample& sample = stream.next();
            const int predicted = engine.predict(sample.features);
            StepResult step = engine.observe(sample, predicted);
            for (auto& event : step.events) events.push_back(event);
        }

        const auto check = verify_event_log(events, 2 * params.t);
        if (!check.ok) {
            return fail("seed " + std::to_string(seed) + ": " + check.error);
        }
    }

    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed >= 120.0) {
        return fail("legal transitions held but runtime was " + format_fixed(elapsed, 1) +
                    " s (budget 120 s)");
    }
    return pass(std::to_string(streams) + " seeded streams, 0 illegal transitions, " +
                format_fixed(elapsed, 1) + " s");
}

// ---------------------------------------------------------------- C2

Outcome criterion2_sudden_drift_recovery() {
    int successes = 0;
    std::string first_failure;

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SyntheticDriftSpec spec;
        spec.kind = DriftKind::Sudden;
        spec.change_points = {5000};
        spec.noise_rate = 0.05;
        spec.dims = 2;
        spec.class_separation = 2.0;
        spec.seed = seed;
        const StreamSource stream = generate_synthetic(spec, 20000);

        ClassifierParams cls;
        cls.n_estimators = 50;
        cls.max_depth = 6;
        cls.num_leaves = 31;
        cls.min_data_in_leaf = 20;
        cls.learning_rate = 0.1;
        cls.seed = seed;
        const std::span<const LabeledSample> all(stream.samples());
        const auto model =
            std::make_shared<const GbdtModel>(fit_gbdt(all.subspan(0, 1000), cls));
        const auto trainer = std::make_shared<const GbdtTrainer>(cls);

        OaswParams params;
        params.t = 300;
        params.alpha = 0.98;
        params.beta = 0.95;
        params.t_prime_max = 1000;

        const RunResult run = run_stream(model, trainer, stream.clone(), params);
        const bool drift_in_window =
            std::any_of(run.trace.events.begin(), run.trace.events.end(),
                        [](const OaswEvent& e) {
                            return e.kind == OaswEventKind::DriftDetected &&
                                   e.index >= 5000 && e.index <= 6000;
                        });
        const double adapted = mean_correct(run.trace.per_instance_correct, 8000, 20000);

        StaticModelPipeline static_arm(model, params.t);
        const EvaluationReport static_run = prequential_evaluate(static_arm, stream.clone());
        const double frozen = mean_correct(static_run.per_instance_correct, 8000, 20000);

        const bool ok =
            drift_in_window && adapted >= kDriftRecoveryAccuracy && frozen <= kStaticCeiling;
        if (ok) {
            ++successes;
        } else if (first_failure.empty()) {
            first_failure = "seed " + std::to_string(seed) +
                            ": drift_in_[5000,6000]=" + (drift_in_window ? "yes" : "no") +
                            " adapted=" + format_fixed(adapted, 4) +
                            " static=" + format_fixed(frozen, 4);
        }
    }

    if (successes < kDriftMinSeeds) {
        return fail(std::to_string(successes) + "/10 seeds met the bar (need >= " +
                    std::to_string(kDriftMinSeeds) + "); first miss: " + first_failure);
    }
    return pass(std::to_string(successes) +
                "/10 seeds: drift flagged in [5000,6000], adapted accuracy >= 0.90 over "
                "[8000,20000), frozen arm <= 0.60");
}

// ---------------------------------------------------------------- C3

Outcome criterion3_window_oracle() {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::size_t> cap_dist(1, 64);
    std::size_t cases = 0;

    while (cases < 10000) {
        const std::size_t capacity = cap_dist(rng);
        CorrectnessRing ring(capacity);
        std::vector<std::uint8_t> flat;
        std::uniform_int_distribution<std::size_t> push_dist(1, 3 * capacity);
        const std::size_t pushes = push_dist(rng);
        std::bernoulli_distribution coin(0.6);
        for (std::size_t k = 0; k < pushes; ++k) {
            const bool correct = coin(rng);
            ring.push(correct);
            flat.push_back(correct ? 1 : 0);
        }

        const std::size_t stored = std::min(pushes, capacity);
        for (int q = 0; q < 8 && cases < 10000; ++q) {
            std::uniform_int_distribution<std::size_t> t_dist(1, stored);
            const std::size_t t = t_dist(rng);
            const std::size_t lowest_end = pushes - stored + t - 1;
            std::uniform_int_distribution<std::size_t> end_dist(lowest_end, pushes - 1);
            const std::size_t end = end_dist(rng);

            std::size_t hits = 0;
            for (std::size_t j = end + 1 - t; j <= end; ++j) hits += flat[j];
            const double expected = static_cast<double>(hits) / static_cast<double>(t);
            if (ring.window_accuracy(end, t) != expected) {
                return fail("mismatch at capacity " + std::to_string(capacity) + ", end " +
                            std::to_string(end) + ", t " + std::to_string(t));
            }
            ++cases;
        }
    }
    return pass("10000 randomized window queries equal flat recomputation exactly");
}

// ---------------------------------------------------------------- C4

Outcome criterion4_pso_sphere() {
    HyperParamSpace space;
    for (int j = 0; j < 3; ++j) {
        space.dims.push_back({"x" + std::to_string(j), HyperParamDim::Kind::Real, -5.0, 5.0,
                              false, false});
    }
    const PsoObjective sphere = [](const std::vector<double>& x, std::size_t) {
        double sum = 0.0;
        for (const double v : x) sum += v * v;
        return -sum;
    };

    int successes = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        PsoConfig config;
        config.swarm_size = 20;
        config.max_evaluations = 20 * 50;
        config.seed = seed;
        const PsoResult result = pso_maximize(space, sphere, config);

        double prev = -std::numeric_limits<double>::infinity();
        for (const double s : result.best_score_history) {
            if (s < prev) {
                return fail("seed " + std::to_string(seed) +
                            ": best-score history decreased");
            }
            prev = s;
        }
        if (-result.best_score <= kSphereTolerance) ++successes;
    }

    if (successes < kSphereMinSuccesses) {
        return fail(std::to_string(successes) + "/100 runs reached the optimum within " +
                    format_double(kSphereTolerance));
    }
    return pass(std::to_string(successes) + "/100 seeded runs within " +
                format_double(kSphereTolerance) + " of the sphere optimum; history "
                "nondecreasing in all 100");
}

// ---------------------------------------------------------------- C5

Outcome criterion5_gbdt() {
    // XOR, exactly separable by two-level trees.
    std::vector<LabeledSample> xor_data;
    for (std::size_t rep = 0; rep < 25; ++rep) {
        for (int a = 0; a <= 1; ++a) {
            for (int b = 0; b <= 1; ++b) {
                LabeledSample s;
                s.index = xor_data.size();
                s.features = {static_cast<double>(a), static_cast<double>(b)};
                s.label = a ^ b;
                xor_data.push_back(std::move(s));
            }
        }
    }
    ClassifierParams xor_params;
    xor_params.n_estimators = 30;
    xor_params.max_depth = 4;
    xor_params.num_leaves = 8;
    xor_params.min_data_in_leaf = 10;
    xor_params.learning_rate = 0.3;
    xor_params.seed = 1;

    FitDiagnostics diagnostics;
    const GbdtModel xor_model = fit_gbdt(xor_data, xor_params, &diagnostics);
    for (const auto& sample : xor_data) {
        if (xor_model.predict(sample.features).label != sample.label) {
            return fail("XOR training accuracy below 1.0");
        }
    }
    for (std::size_t r = 1; r < diagnostics.round_train_logloss.size(); ++r) {
        if (diagnostics.round_train_logloss[r] >
            diagnostics.round_train_logloss[r - 1] + 1e-12) {
            return fail("training log-loss increased at round " + std::to_string(r));
        }
    }

    // Randomized sweep: structural caps on every fitted tree.
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<LabeledSample> data;
        for (std::size_t i = 0; i < 150; ++i) {
            LabeledSample s;
            s.index = i;
            s.features = {unit(rng), unit(rng), unit(rng)};
            const bool signal = (s.features[0] > 0.5) != (s.features[1] > 0.5);
            s.label = (unit(rng) < 0.1) ? !signal : signal;
            data.push_back(std::move(s));
        }

        ClassifierParams params;
        params.n_estimators = 1 + static_cast<int>(rng() % 10);
        params.max_depth = 2 + static_cast<int>(rng() % 7);
        params.num_leaves = 2 + static_cast<int>(rng() % 15);
        params.min_data_in_leaf = 1 + static_cast<int>(rng() % 8);
        params.learning_rate = 0.05 + 0.85 * unit(rng);
        params.goss_enabled = trial % 2 == 0;
        params.goss_top_fraction = 0.2 + 0.2 * unit(rng);
        params.goss_rand_fraction = 0.1 + 0.2 * unit(rng);
        params.seed = rng();

        const GbdtModel model = fit_gbdt(data, params);
        if (model.trees().size() > static_cast<std::size_t>(params.n_estimators)) {
            return fail("trial " + std::to_string(trial) + ": too many trees");
        }
        for (const auto& tree : model.trees()) {
            if (tree.leaf_count() > static_cast<std::size_t>(params.num_leaves)) {
                return fail("trial " + std::to_string(trial) + ": num_leaves cap violated");
            }
            if (tree.depth() > static_cast<std::uint32_t>(params.max_depth)) {
                return fail("trial " + std::to_string(trial) + ": max_depth cap violated");
            }
            for (const auto& node : tree.nodes) {
                if (node.is_leaf() &&
                    node.sample_count < static_cast<std::uint32_t>(params.min_data_in_leaf)) {
                    return fail("trial " + std::to_string(trial) +
                                ": min_data_in_leaf cap violated");
                }
            }
        }
    }
    return pass("XOR accuracy 1.0; log-loss nonincreasing over 30 rounds; caps held on a "
                "20-trial randomized sweep");
}

// ---------------------------------------------------------------- C6

Outcome criterion6_goss_unbiasedness() {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> grad(1.0, 0.5);
    std::vector<double> gradients(1000);
    for (double& g : gradients) g = grad(rng);
    const double full_sum = std::accumulate(gradients.begin(), gradients.end(), 0.0);

    const double a = 0.2;
    const double b = 0.2;
    double weighted_mean = 0.0;
    double rel_dev_mean = 0.0;
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        const GossSelection sel = goss_subsample(gradients, a, b, seed);
        double weighted = 0.0;
        for (std::size_t k = 0; k < sel.indices.size(); ++k) {
            weighted += sel.weights[k] * gradients[sel.indices[k]];
        }
        weighted_mean += weighted;
        rel_dev_mean += std::abs(weighted - full_sum) / std::abs(full_sum);
    }
    weighted_mean /= 1000.0;
    rel_dev_mean /= 1000.0;

    const double mean_rel = std::abs(weighted_mean - full_sum) / std::abs(full_sum);
    if (mean_rel > kGossRelTolerance || rel_dev_mean > kGossRelTolerance) {
        return fail("seed-averaged weighted sum off by " + format_fixed(100.0 * mean_rel, 3) +
                    "% (mean per-seed deviation " + format_fixed(100.0 * rel_dev_mean, 3) +
                    "%), tolerance 5%");
    }
    return pass("1000-seed average within " + format_fixed(100.0 * mean_rel, 3) +
                "% of the full gradient sum (mean per-seed deviation " +
                format_fixed(100.0 * rel_dev_mean, 3) + "%); tolerance 5%");
}

// ---------------------------------------------------------------- C7

Outcome criterion7_memory_bound() {
    OaswParams params;
    params.t = 300;
    params.alpha = 0.98;
    params.beta = 0.95;
    params.t_prime_max = 1000;
    const std::size_t bound = params.t_prime_max + 2 * params.t;

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<bool> flags;
    flags.reserve(100000);
    while (flags.size() < 100000) {
        // Stable stretch, then a degraded stretch the engine must absorb.
        for (std::size_t k = 0; k < 1500 && flags.size() < 100000; ++k) {
            flags.push_back(unit(rng) < 0.99);
        }
        for (std::size_t k = 0; k < 600 && flags.size() < 100000; ++k) {
            flags.push_back(unit(rng) < 0.2);
        }
    }

    OaswEngine engine(std::make_shared<ThresholdClassifier>(), threshold_trainer(1), params);
    StreamSource stream = make_flag_stream(flags);
    stream.rewind();
    std::size_t max_live = 0;
    while (!stream.done()) {
        const LabeledSample& sample = stream.next();
        const int predicted = engine.predict(sample.features);
        engine.observe(sample, predicted);
        max_live = std::max(max_live, engine.live_sample_entries());
        if (max_live > bound) {
            return fail("live entries reached " + std::to_string(max_live) +
                        " at sample " + std::to_string(engine.samples_seen()) +
                        " (bound " + std::to_string(bound) + ")");
        }
    }
    return pass("100k-sample run peaked at " + std::to_string(max_live) +
                " live entries (bound t_prime_max + 2t = " + std::to_string(bound) + "), " +
                std::to_string(engine.retrain_count()) + " retrains");
}

// ---------------------------------------------------------------- C8

Outcome criterion8_baseline_detectors() {
    int ddm_hits = 0;
    int adwin_hits = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        std::mt19937_64 rng(seed);
        std::bernoulli_distribution before(0.05);
        std::bernoulli_distribution after(0.5);

        std::vector<bool> errors;
        errors.reserve(600);
        for (int k = 0; k < 500; ++k) errors.push_back(before(rng));
        for (int k = 0; k < 100; ++k) errors.push_back(after(rng));

        DdmDetector ddm;
        AdwinDetector adwin;
        bool ddm_flagged = false;
        bool adwin_flagged = false;
        for (std::size_t i = 0; i < errors.size(); ++i) {
            const bool is_error = errors[i];
            const SignalLevel d = ddm.update(is_error);
            const SignalLevel w = adwin.update(is_error ? 1.0 : 0.0);
            if (i >= 500) {
                ddm_flagged = ddm_flagged || d == SignalLevel::Drift;
                adwin_flagged = adwin_flagged || w == SignalLevel::Drift;
            }
        }
        if (ddm_flagged) ++ddm_hits;
        if (adwin_flagged) ++adwin_hits;
    }
    if (ddm_hits < kDetectorMinSuccesses || adwin_hits < kDetectorMinSuccesses) {
        return fail("step flagged within 100 samples in " + std::to_string(ddm_hits) +
                    "/100 (ddm) and " + std::to_string(adwin_hits) +
                    "/100 (adwin); need >= 95 each");
    }

    // Stationary runs must stay silent end to end.
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        std::mt19937_64 rng(1000 + seed);
        std::bernoulli_distribution flat(0.05);
        DdmDetector ddm;
        AdwinDetector adwin;
        for (int k = 0; k < 10000; ++k) {
            const bool is_error = flat(rng);
            if (ddm.update(is_error) == SignalLevel::Drift) {
                return fail("ddm false drift on stationary seed " + std::to_string(seed));
            }
            if (adwin.update(is_error ? 1.0 : 0.0) == SignalLevel::Drift) {
                return fail("adwin false drift on stationary seed " + std::to_string(seed));
            }
        }
    }
    return pass("step flagged within 100 samples in " + std::to_string(ddm_hits) +
                "/100 (ddm) and " + std::to_string(adwin_hits) +
                "/100 (adwin); zero signals on 5 stationary 10k streams");
}

// ---------------------------------------------------------------- C9

struct DatasetArm {
    std::string name;
    double accuracy = 0.0;
    double static_accuracy = 0.0;
    bool ran = false;
};

DatasetArm run_dataset_arm(const std::string& name, StreamSource stream,
                           const ClassifierParams& cls, const OaswParams& oasw_params,
                           bool with_static) {
    const HoldoutSplit split = holdout_split(stream, 0.1);
    const auto model =
        std::make_shared<const GbdtModel>(fit_gbdt(split.offline.samples(), cls));
    const auto trainer = std::make_shared<const GbdtTrainer>(cls);

    DatasetArm arm;
    arm.name = name;
    const RunResult run = run_stream(model, trainer, split.online.clone(), oasw_params);
    arm.accuracy = run.trace.metrics.accuracy;
    if (with_static) {
        StaticModelPipeline frozen(model, oasw_params.t);
        arm.static_accuracy =
            prequential_evaluate(frozen, split.online.clone()).metrics.accuracy;
    }
    arm.ran = true;
    return arm;
}

Outcome criterion9_datasets() {
    const char* iot_csv = std::getenv("OASW_IOTID20_CSV");
    const char* nsl_train = std::getenv("OASW_NSLKDD_TRAIN_CSV");
    const char* nsl_test = std::getenv("OASW_NSLKDD_TEST_CSV");

    const bool have_iot = iot_csv && *iot_csv;
    const bool have_nsl = nsl_train && *nsl_train && nsl_test && *nsl_test;
    if (!have_iot && !have_nsl) {
        return skip("set OASW_IOTID20_CSV and/or OASW_NSLKDD_TRAIN_CSV + "
                    "OASW_NSLKDD_TEST_CSV to prepared CSVs (see README, Datasets) to "
                    "evaluate the dataset accuracy floors");
    }

    CsvOptions options;
    options.label_column = "label";
    options.positive_labels = {"1"};
    std::string detail;

    if (have_iot) {
        StreamSource stream = load_csv(iot_csv, options);
        stream = decimate(stream, 10, mix_seed(1, 0xDEC1));

        ClassifierParams cls;
        cls.n_estimators = 300;
        cls.max_depth = 40;
        cls.learning_rate = 0.56;
        cls.num_leaves = 200;
        cls.min_data_in_leaf = 35;
        cls.seed = 1;

        OaswParams params;
        params.alpha = 0.999;
        params.beta = 0.990;
        params.t = 300;
        params.t_prime_max = 1000;

        const DatasetArm arm =
            run_dataset_arm("IoTID20", std::move(stream), cls, params, false);
        detail += "IoTID20 accuracy " + format_fixed(100.0 * arm.accuracy, 2) + "% (floor " +
                  format_fixed(100.0 * kIotAccuracyFloor, 1) + "%)";
        if (arm.accuracy < kIotAccuracyFloor) {
            return fail(detail);
        }
    } else {
        detail += "IoTID20 not provided (skipped)";
    }

    if (have_nsl) {
        CsvOptions nsl_options = options;
        StreamSource stream = load_csv_concat(nsl_train, 0.1, nsl_test, nsl_options);

        ClassifierParams cls;
        cls.n_estimators = 300;
        cls.max_depth = 42;
        cls.learning_rate = 0.81;
        cls.num_leaves = 100;
        cls.min_data_in_leaf = 45;
        cls.seed = 1;

        OaswParams params;
        params.alpha = 0.978;
        params.beta = 0.954;
        params.t = 350;
        params.t_prime_max = 3100;

        const DatasetArm arm =
            run_dataset_arm("NSL-KDD", std::move(stream), cls, params, true);
        detail += "; NSL-KDD accuracy " + format_fixed(100.0 * arm.accuracy, 2) +
                  "% (floor " + format_fixed(100.0 * kNslAccuracyFloor, 1) +
                  "%), static arm " + format_fixed(100.0 * arm.static_accuracy, 2) +
                  "% (ceiling " + format_fixed(100.0 * kNslStaticCeiling, 1) + "%)";
        if (arm.accuracy < kNslAccuracyFloor || arm.static_accuracy >= kNslStaticCeiling) {
            return fail(detail);
        }
    } else {
        detail += "; NSL-KDD not provided (skipped)";
    }
    return pass(detail);
}

// ---------------------------------------------------------------- C10

struct C10Artifacts {
    std::string summary;
    std::string curve;
    std::string events;
    EvaluationReport trace;
};

std::string masked_summary_text(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text);
    doc["avg_test_time_ms"] = nullptr;
    doc["amortized_time_ms"] = nullptr;
    doc["retrain_time_ms"] = nullptr;
    doc["meta"]["started_at"] = nullptr;
    return doc.dump(2) + "\n";
}

C10Artifacts c10_run() {
    SyntheticDriftSpec spec;
    spec.kind = DriftKind::Sudden;
    spec.change_points = {1500};
    spec.noise_rate = 0.02;
    spec.dims = 2;
    spec.class_separation = 2.0;
    spec.seed = 7;
    const StreamSource stream = generate_synthetic(spec, 3000);
    const HoldoutSplit split = holdout_split(stream, 0.1);

    ClassifierParams cls;
    cls.n_estimators = 40;
    cls.max_depth = 5;
    cls.num_leaves = 16;
    cls.min_data_in_leaf = 10;
    cls.learning_rate = 0.2;
    cls.seed = 7;
    const auto model =
        std::make_shared<const GbdtModel>(fit_gbdt(split.offline.samples(), cls));
    const auto trainer = std::make_shared<const GbdtTrainer>(cls);

    OaswParams params;
    params.t = 100;
    params.alpha = 0.98;
    params.beta = 0.95;
    params.t_prime_max = 400;

    RunResult run = run_stream(model, trainer, split.online.clone(), params);
    run.trace.meta.seed = 7;
    run.trace.meta.online_offset = split.online_offset;
    run.trace.meta.config_snapshot = "acceptance criterion 10 pinned run";

    C10Artifacts artifacts;
    artifacts.summary = summary_json_text(run.trace);
    artifacts.curve = curve_csv_text(run.trace);
    artifacts.events = events_jsonl_text(run.trace);
    artifacts.trace = std::move(run.trace);
    return artifacts;
}

std::filesystem::path golden_dir() { return OASW_GOLDEN_DIR; }

void write_c10_golden() {
    const C10Artifacts artifacts = c10_run();
    write_text(golden_dir() / "c10_summary_masked.json",
               masked_summary_text(artifacts.summary));
    write_text(golden_dir() / "c10_accuracy_curve.csv", artifacts.curve);
    write_text(golden_dir() / "c10_events.jsonl", artifacts.events);
    std::cout << "wrote criterion-10 golden snapshots to " << golden_dir().string() << "\n";
}

Outcome criterion10_report_consistency() {
    const C10Artifacts artifacts = c10_run();
    const EvaluationReport& trace = artifacts.trace;

    // Metrics in the serialized summary must equal an independent
    // recomputation from the trace counts.
    const nlohmann::json doc = nlohmann::json::parse(artifacts.summary);
    const auto tp = static_cast<double>(trace.counts.tp);
    const auto fp = static_cast<double>(trace.counts.fp);
    const auto tn = static_cast<double>(trace.counts.tn);
    const auto fn = static_cast<double>(trace.counts.fn);
    const double accuracy = (tp + tn) / (tp + fp + tn + fn);
    const double precision = tp / (tp + fp);
    const double recall = tp / (tp + fn);
    const double f1 = 2.0 * precision * recall / (precision + recall);

    std::size_t correct_sum = 0;
    for (const auto c : trace.per_instance_correct) correct_sum += c;
    const double trace_accuracy = static_cast<double>(correct_sum) /
                                  static_cast<double>(trace.per_instance_correct.size());

    auto close = [](double x, double y) { return std::abs(x - y) <= kMetricsTolerance; };
    if (!close(doc.at("metrics").at("accuracy_pct").get<double>() / 100.0, accuracy) ||
        !close(doc.at("metrics").at("precision_pct").get<double>() / 100.0, precision) ||
        !close(doc.at("metrics").at("recall_pct").get<double>() / 100.0, recall) ||
        !close(doc.at("metrics").at("f1_pct").get<double>() / 100.0, f1) ||
        !close(accuracy, trace_accuracy)) {
        return fail("summary metrics diverge from trace recomputation beyond 1e-12");
    }
    if (doc.at("events_count").get<std::size_t>() != trace.events.size()) {
        return fail("events_count does not match the trace event log");
    }

    // Same seed, same bytes (wall-clock fields masked).
    const C10Artifacts again = c10_run();
    if (masked_summary_text(again.summary) != masked_summary_text(artifacts.summary) ||
        again.curve != artifacts.curve || again.events != artifacts.events) {
        return fail("re-running the pinned configuration changed the artifacts");
    }

    // Committed snapshots: regenerate with --write-golden after intended
    // behavior changes.
    const auto dir = golden_dir();
    if (!std::filesystem::exists(dir / "c10_summary_masked.json")) {
        return fail("golden snapshots missing under " + dir.string() +
                    "; run oasw_acceptance --write-golden");
    }
    if (read_text(dir / "c10_summary_masked.json") != masked_summary_text(artifacts.summary)) {
        return fail("summary.json diverges from the committed golden (timing masked)");
    }
    if (read_text(dir / "c10_accuracy_curve.csv") != artifacts.curve) {
        return fail("accuracy_curve.csv diverges from the committed golden");
    }
    if (read_text(dir / "c10_events.jsonl") != artifacts.events) {
        return fail("events.jsonl diverges from the committed golden");
    }

    return pass("summary equals trace recomputation within 1e-12; double run and committed "
                "goldens byte-identical with timing fields masked (" +
                std::to_string(trace.events.size()) + " events, accuracy " +
                format_fixed(100.0 * accuracy, 2) + "%)");
}

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    bool write_golden = false;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--write-golden") {
            write_golden = true;
        } else if (arg == "--only" && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::cerr << "usage: oasw_acceptance [--only N] [--write-golden]\n";
            return 2;
        }
    }

    if (write_golden) {
        write_c10_golden();
        return 0;
    }

    struct Criterion {
        int number;
        const char* title;
        Outcome (*run)();
    };
    const std::vector<Criterion> criteria = {
        {1, "state machine legality", criterion1_state_machine},
        {2, "sudden-drift recovery", criterion2_sudden_drift_recovery},
        {3, "window-accuracy oracle", criterion3_window_oracle},
        {4, "pso sphere sanity", criterion4_pso_sphere},
        {5, "gbdt training suite", criterion5_gbdt},
        {6, "goss unbiasedness", criterion6_goss_unbiasedness},
        {7, "engine memory bound", criterion7_memory_bound},
        {8, "baseline detectors", criterion8_baseline_detectors},
        {9, "dataset reproduction", criterion9_datasets},
        {10, "report self-consistency", criterion10_report_consistency},
    };

    bool any_failed = false;
    for (const auto& criterion : criteria) {
        if (only != 0 && only != criterion.number) continue;
        Outcome outcome;
        try {
            outcome = criterion.run();
        } catch (const std::exception& e) {
            outcome = fail(std::string("unexpected exception: ") + e.what());
        }
        const char* tag = outcome.status == Status::Pass ? "[PASS]"
                          : outcome.status == Status::Skip ? "[SKIP]"
                                                           : "[FAIL]";
        std::cout << tag << " C" << criterion.number << " (" << criterion.title
                  << "): " << outcome.detail << "\n";
        any_failed = any_failed || outcome.status == Status::Fail;
    }
    return any_failed ? 1 : 0;
}
