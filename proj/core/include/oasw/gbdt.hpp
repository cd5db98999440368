#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "oasw/classifier.hpp"
#include "oasw/stream.hpp"

namespace oasw {

/// The five tuned hyperparameters plus GOSS sampling controls.
struct ClassifierParams {
    int n_estimators = 100;
    int max_depth = 8;
    double learning_rate = 0.1; // open interval (0, 1)
    int num_leaves = 31;
    int min_data_in_leaf = 20;
    bool goss_enabled = false;
    double goss_top_fraction = 0.2;  // a: kept by |gradient|
    double goss_rand_fraction = 0.1; // b: random remainder, reweighted by (1-a)/b
    std::uint64_t seed = 1;

    void validate() const;
};

struct GossSelection {
    std::vector<std::size_t> indices;
    std::vector<double> weights; // parallel to indices
};

/// Gradient-based one-side sampling: the ceil(a*N) largest-|gradient|
/// samples with weight 1 plus ceil(b*N) uniformly random others with weight
/// (1-a)/b, so weighted gradient sums stay unbiased estimates of the full
/// sums.
GossSelection goss_subsample(std::span<const double> gradients, double a, double b,
                             std::uint64_t seed);

/// Boosted regression trees over logistic loss. Raw score is base_score
/// plus the learning-rate-scaled leaf values (leaf values are stored
/// pre-scaled); probability is the logistic of the clamped raw score.
class GbdtModel final : public BinaryClassifier {
public:
    struct Node {
        int feature = -1; // -1 for leaves
        double threshold = 0.0;
        int left = -1;
        int right = -1;
        double leaf_value = 0.0;       // already scaled by learning_rate
        std::uint32_t depth = 0;       // root = 0
        std::uint32_t sample_count = 0; // training samples routed here
        bool is_leaf() const { return feature < 0; }
    };
    struct Tree {
        std::vector<Node> nodes; // nodes[0] is the root
        std::size_t leaf_count() const;
        std::uint32_t depth() const;
        double score(std::span<const double> features) const;
    };

    GbdtModel(double base_score, std::vector<Tree> trees, ClassifierParams params,
              std::size_t schema_width);

    Prediction predict(std::span<const double> features) const override;
    std::vector<Prediction> predict_batch(std::span<const LabeledSample> samples) const;
    double raw_score(std::span<const double> features) const;

    std::size_t schema_width() const override { return schema_width_; }
    std::size_t struct_bytes() const override;
    const std::vector<Tree>& trees() const { return trees_; }
    double base_score() const { return base_score_; }
    const ClassifierParams& params() const { return params_; }

    // Versioned JSON document, loadable by the online stage.
    std::string to_json_string(int indent = 2) const;
    static GbdtModel from_json_string(const std::string& text);
    void save(const std::filesystem::path& path) const;
    static GbdtModel load(const std::filesystem::path& path);

private:
    double base_score_ = 0.0;
    std::vector<Tree> trees_;
    ClassifierParams params_;
    std::size_t schema_width_ = 0;
};

/// Per-round training log-loss, recorded when requested by fit_gbdt.
struct FitDiagnostics {
    std::vector<double> round_train_logloss; // entry 0 = prior only
};

GbdtModel fit_gbdt(std::span<const LabeledSample> samples, const ClassifierParams& params,
                   FitDiagnostics* diagnostics = nullptr);

class GbdtTrainer final : public ClassifierTrainer {
public:
    explicit GbdtTrainer(ClassifierParams params);
    std::shared_ptr<const BinaryClassifier> fit(std::span<const LabeledSample> samples) const override;
    std::size_t min_fit_size() const override;
    const ClassifierParams& params() const { return params_; }

private:
    ClassifierParams params_;
};

} // namespace oasw
