#include "oasw/gbdt.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <json.hpp>

#include "oasw/error.hpp"
#include "oasw/util.hpp"

namespace oasw {
namespace {

constexpr double kLeafL2 = 1.0;        // L2 on leaf values
constexpr double kRawScoreClamp = 30.0; // keeps the logistic away from 0/1 exactly
constexpr double kPriorClamp = 1e-6;

double sigmoid(double raw) { return 1.0 / (1.0 + std::exp(-raw)); }

double clamped_probability(double raw) {
    return sigmoid(std::clamp(raw, -kRawScoreClamp, kRawScoreClamp));
}

double mean_logloss(std::span<const int> labels, std::span<const double> raw) {
    double total = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const double p = std::clamp(clamped_probability(raw[i]), 1e-15, 1.0 - 1e-15);
        total += labels[i] == 1 ? -std::log(p) : -std::log(1.0 - p);
    }
    return total / static_cast<double>(labels.size());
}

struct SplitChoice {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double gain = -std::numeric_limits<double>::infinity();
};

struct BuilderLeaf {
    int node = -1;
    std::uint32_t depth = 0;
    std::vector<std::size_t> rows; // indices into the per-tree selection
    double g_sum = 0.0;
    double h_sum = 0.0;
    SplitChoice split;
};

class TreeBuilder {
public:
    TreeBuilder(std::span<const LabeledSample> samples, const GossSelection& selection,
                std::span<const double> gradients, std::span<const double> hessians,
                const ClassifierParams& params)
        : samples_(samples), selection_(selection), gradients_(gradients), hessians_(hessians),
          params_(params) {}

    GbdtModel::Tree build() {
        GbdtModel::Tree tree;
        BuilderLeaf root;
        root.node = new_node(tree, 0, selection_.indices.size());
        root.rows.resize(selection_.indices.size());
        for (std::size_t r = 0; r < root.rows.size(); ++r) root.rows[r] = r;
        accumulate(root);
        find_best_split(root);

        std::vector<BuilderLeaf> open;
        open.push_back(std::move(root));
        std::size_t leaf_count = 1;

        while (leaf_count < static_cast<std::size_t>(params_.num_leaves)) {
            // Best-first: highest gain wins, earlier node on ties.
            int best = -1;
            for (int i = 0; i < static_cast<int>(open.size()); ++i) {
                if (!open[i].split.found) continue;
                if (best < 0 || open[i].split.gain > open[best].split.gain) best = i;
            }
            if (best < 0) break;

            BuilderLeaf leaf = std::move(open[best]);
            open.erase(open.begin() + best);
            apply_split(tree, leaf, open);
            ++leaf_count;
        }

        for (const auto& leaf : open) finalize_leaf(tree, leaf);
        return tree;
    }

private:
    std::span<const double> features_of(std::size_t row) const {
        return samples_[selection_.indices[row]].features;
    }

    int new_node(GbdtModel::Tree& tree, std::uint32_t depth, std::size_t count) {
        GbdtModel::Node node;
        node.depth = depth;
        node.sample_count = static_cast<std::uint32_t>(count);
        tree.nodes.push_back(node);
        return static_cast<int>(tree.nodes.size() - 1);
    }

    void accumulate(BuilderLeaf& leaf) const {
        leaf.g_sum = 0.0;
        leaf.h_sum = 0.0;
        for (std::size_t row : leaf.rows) {
            const double w = selection_.weights[row];
            leaf.g_sum += w * gradients_[selection_.indices[row]];
            leaf.h_sum += w * hessians_[selection_.indices[row]];
        }
    }

    static double leaf_objective(double g, double h) { return g * g / (h + kLeafL2); }

    // Exact threshold scan over sorted feature values. First-encountered
    // best gain wins: features ascending, thresholds ascending, strict
    // improvement required to replace the incumbent.
    void find_best_split(BuilderLeaf& leaf) const {
        leaf.split = SplitChoice{};
        if (leaf.depth >= static_cast<std::uint32_t>(params_.max_depth)) return;
        const auto min_leaf = static_cast<std::size_t>(params_.min_data_in_leaf);
        if (leaf.rows.size() < 2 * min_leaf) return;

        const double parent_obj = leaf_objective(leaf.g_sum, leaf.h_sum);
        const std::size_t width = samples_[0].features.size();
        std::vector<std::pair<double, std::size_t>> order; // (value, row)
        order.reserve(leaf.rows.size());

        for (std::size_t f = 0; f < width; ++f) {
            order.clear();
            for (std::size_t row : leaf.rows) {
                order.emplace_back(features_of(row)[f], row);
            }
            std::sort(order.begin(), order.end());

            double g_left = 0.0;
            double h_left = 0.0;
            for (std::size_t k = 0; k + 1 < order.size(); ++k) {
                const std::size_t row = order[k].second;
                const double w = selection_.weights[row];
                g_left += w * gradients_[selection_.indices[row]];
                h_left += w * hessians_[selection_.indices[row]];
                if (order[k].first == order[k + 1].first) continue; // no boundary here
                const std::size_t n_left = k + 1;
                const std::size_t n_right = order.size() - n_left;
                if (n_left < min_leaf || n_right < min_leaf) continue;

                const double gain = leaf_objective(g_left, h_left) +
                                    leaf_objective(leaf.g_sum - g_left, leaf.h_sum - h_left) -
                                    parent_obj;
                if (gain >= 0.0 && gain > leaf.split.gain) {
                    double threshold = 0.5 * (order[k].first + order[k + 1].first);
                    if (threshold <= order[k].first) threshold = order[k + 1].first;
                    leaf.split.found = true;
                    leaf.split.feature = static_cast<int>(f);
                    leaf.split.threshold = threshold;
                    leaf.split.gain = gain;
                }
            }
        }
    }

    void apply_split(GbdtModel::Tree& tree, BuilderLeaf& leaf, std::vector<BuilderLeaf>& open) {
        BuilderLeaf left;
        BuilderLeaf right;
        left.depth = right.depth = leaf.depth + 1;
        for (std::size_t row : leaf.rows) {
            const bool go_left = features_of(row)[static_cast<std::size_t>(leaf.split.feature)] <
                                 leaf.split.threshold;
            (go_left ? left.rows : right.rows).push_back(row);
        }
        left.node = new_node(tree, left.depth, left.rows.size());
        right.node = new_node(tree, right.depth, right.rows.size());

        auto& parent = tree.nodes[static_cast<std::size_t>(leaf.node)];
        parent.feature = leaf.split.feature;
        parent.threshold = leaf.split.threshold;
        parent.left = left.node;
        parent.right = right.node;

        accumulate(left);
        accumulate(right);
        find_best_split(left);
        find_best_split(right);
        open.push_back(std::move(left));
        open.push_back(std::move(right));
    }

    void finalize_leaf(GbdtModel::Tree& tree, const BuilderLeaf& leaf) const {
        auto& node = tree.nodes[static_cast<std::size_t>(leaf.node)];
        node.feature = -1;
        node.leaf_value = -leaf.g_sum / (leaf.h_sum + kLeafL2) * params_.learning_rate;
    }

    std::span<const LabeledSample> samples_;
    const GossSelection& selection_;
    std::span<const double> gradients_;
    std::span<const double> hessians_;
    const ClassifierParams& params_;
};

GossSelection select_all(std::size_t n) {
    GossSelection all;
    all.indices.resize(n);
    for (std::size_t i = 0; i < n; ++i) all.indices[i] = i;
    all.weights.assign(n, 1.0);
    return all;
}

} // namespace

void ClassifierParams::validate() const {
    if (n_estimators < 1) throw ConfigError("n_estimators must be >= 1");
    if (max_depth < 1) throw ConfigError("max_depth must be >= 1");
    if (!(learning_rate > 0.0 && learning_rate < 1.0)) {
        throw ConfigError("learning_rate must lie in (0, 1)");
    }
    if (num_leaves < 2) throw ConfigError("num_leaves must be >= 2");
    if (min_data_in_leaf < 1) throw ConfigError("min_data_in_leaf must be >= 1");
    if (goss_enabled) {
        if (!(goss_top_fraction > 0.0) || !(goss_rand_fraction > 0.0)) {
            throw ConfigError("GOSS fractions must be positive");
        }
        if (goss_top_fraction + goss_rand_fraction > 1.0) {
            throw ConfigError("GOSS fractions must satisfy a + b <= 1");
        }
    }
}

GossSelection goss_subsample(std::span<const double> gradients, double a, double b,
                             std::uint64_t seed) {
    if (!(a > 0.0) || !(b > 0.0)) throw ConfigError("goss_subsample: fractions must be positive");
    if (a + b > 1.0) throw ConfigError("goss_subsample: a + b must be <= 1");

    const std::size_t n = gradients.size();
    const auto top_count = std::min(
        n, static_cast<std::size_t>(std::ceil(a * static_cast<double>(n))));

    std::vector<std::size_t> by_magnitude(n);
    for (std::size_t i = 0; i < n; ++i) by_magnitude[i] = i;
    std::stable_sort(by_magnitude.begin(), by_magnitude.end(), [&](std::size_t x, std::size_t y) {
        return std::abs(gradients[x]) > std::abs(gradients[y]);
    });

    GossSelection out;
    out.indices.assign(by_magnitude.begin(),
                       by_magnitude.begin() + static_cast<std::ptrdiff_t>(top_count));
    out.weights.assign(top_count, 1.0);

    std::vector<std::size_t> rest(by_magnitude.begin() + static_cast<std::ptrdiff_t>(top_count),
                                  by_magnitude.end());
    const auto rand_count = std::min(
        rest.size(), static_cast<std::size_t>(std::ceil(b * static_cast<double>(n))));
    std::mt19937_64 rng(seed);
    std::shuffle(rest.begin(), rest.end(), rng);

    const double amplify = (1.0 - a) / b;
    for (std::size_t k = 0; k < rand_count; ++k) {
        out.indices.push_back(rest[k]);
        out.weights.push_back(amplify);
    }
    return out;
}

std::size_t GbdtModel::Tree::leaf_count() const {
    std::size_t count = 0;
    for (const auto& node : nodes) count += node.is_leaf() ? 1 : 0;
    return count;
}

std::uint32_t GbdtModel::Tree::depth() const {
    std::uint32_t d = 0;
    for (const auto& node : nodes) d = std::max(d, node.depth);
    return d;
}

double GbdtModel::Tree::score(std::span<const double> features) const {
    const Node* node = &nodes[0];
    while (!node->is_leaf()) {
        const bool go_left = features[static_cast<std::size_t>(node->feature)] < node->threshold;
        node = &nodes[static_cast<std::size_t>(go_left ? node->left : node->right)];
    }
    return node->leaf_value;
}

GbdtModel::GbdtModel(double base_score, std::vector<Tree> trees, ClassifierParams params,
                     std::size_t schema_width)
    : base_score_(base_score), trees_(std::move(trees)), params_(params),
      schema_width_(schema_width) {}

double GbdtModel::raw_score(std::span<const double> features) const {
    if (features.size() != schema_width_) {
        throw DataError("predict: feature width " + std::to_string(features.size()) +
                        " does not match model schema width " + std::to_string(schema_width_));
    }
    double raw = base_score_;
    for (const auto& tree : trees_) raw += tree.score(features);
    return raw;
}

Prediction GbdtModel::predict(std::span<const double> features) const {
    const double p = clamped_probability(raw_score(features));
    return Prediction{p >= 0.5 ? 1 : 0, p};
}

std::vector<Prediction> GbdtModel::predict_batch(std::span<const LabeledSample> samples) const {
    std::vector<Prediction> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(predict(s.features));
    return out;
}

std::size_t GbdtModel::struct_bytes() const {
    std::size_t bytes = sizeof(GbdtModel);
    for (const auto& tree : trees_) bytes += sizeof(Tree) + tree.nodes.size() * sizeof(Node);
    return bytes;
}

GbdtModel fit_gbdt(std::span<const LabeledSample> samples, const ClassifierParams& params,
                   FitDiagnostics* diagnostics) {
    params.validate();
    if (samples.empty()) throw DataError("fit: empty sample set");
    const std::size_t width = samples[0].features.size();
    if (width == 0) throw DataError("fit: samples need at least one feature");
    for (const auto& s : samples) {
        if (s.features.size() != width) {
            throw DataError("fit: inconsistent feature width at sample " + std::to_string(s.index));
        }
    }

    const std::size_t n = samples.size();
    std::vector<int> labels(n);
    double positives = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = samples[i].label;
        positives += samples[i].label;
    }
    const double prior =
        std::clamp(positives / static_cast<double>(n), kPriorClamp, 1.0 - kPriorClamp);
    const double base_score = std::log(prior / (1.0 - prior));

    std::vector<double> raw(n, base_score);
    std::vector<double> gradients(n);
    std::vector<double> hessians(n);
    if (diagnostics) {
        diagnostics->round_train_logloss.clear();
        diagnostics->round_train_logloss.push_back(mean_logloss(labels, raw));
    }

    std::vector<GbdtModel::Tree> trees;
    trees.reserve(static_cast<std::size_t>(params.n_estimators));
    for (int round = 0; round < params.n_estimators; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            const double p = clamped_probability(raw[i]);
            gradients[i] = p - labels[i];
            hessians[i] = p * (1.0 - p);
        }
        GossSelection selection =
            params.goss_enabled
                ? goss_subsample(gradients, params.goss_top_fraction, params.goss_rand_fraction,
                                 mix_seed(params.seed, static_cast<std::uint64_t>(round)))
                : select_all(n);

        TreeBuilder builder(samples, selection, gradients, hessians, params);
        GbdtModel::Tree tree = builder.build();
        for (std::size_t i = 0; i < n; ++i) raw[i] += tree.score(samples[i].features);
        if (diagnostics) diagnostics->round_train_logloss.push_back(mean_logloss(labels, raw));
        trees.push_back(std::move(tree));
    }
    return GbdtModel(base_score, std::move(trees), params, width);
}

std::string GbdtModel::to_json_string(int indent) const {
    nlohmann::json doc;
    doc["format"] = "oasw-gbdt";
    doc["format_version"] = 1;
    doc["base_score"] = base_score_;
    doc["schema_width"] = schema_width_;
    doc["params"] = {{"n_estimators", params_.n_estimators},
                     {"max_depth", params_.max_depth},
                     {"learning_rate", params_.learning_rate},
                     {"num_leaves", params_.num_leaves},
                     {"min_data_in_leaf", params_.min_data_in_leaf},
                     {"goss_enabled", params_.goss_enabled},
                     {"goss_top_fraction", params_.goss_top_fraction},
                     {"goss_rand_fraction", params_.goss_rand_fraction},
                     {"seed", params_.seed}};
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& tree : trees_) {
        nlohmann::json nodes = nlohmann::json::array();
        for (const auto& node : tree.nodes) {
            nodes.push_back({{"feature", node.feature},
                             {"threshold", node.threshold},
                             {"left", node.left},
                             {"right", node.right},
                             {"leaf_value", node.leaf_value},
                             {"depth", node.depth},
                             {"sample_count", node.sample_count}});
        }
        trees.push_back({{"nodes", std::move(nodes)}});
    }
    doc["trees"] = std::move(trees);
    return doc.dump(indent);
}

GbdtModel GbdtModel::from_json_string(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("model JSON parse error: ") + e.what());
    }
    try {
        if (doc.at("format") != "oasw-gbdt" || doc.at("format_version") != 1) {
            throw DataError("unsupported model format/version");
        }
        ClassifierParams params;
        const auto& p = doc.at("params");
        params.n_estimators = p.at("n_estimators");
        params.max_depth = p.at("max_depth");
        params.learning_rate = p.at("learning_rate");
        params.num_leaves = p.at("num_leaves");
        params.min_data_in_leaf = p.at("min_data_in_leaf");
        params.goss_enabled = p.at("goss_enabled");
        params.goss_top_fraction = p.at("goss_top_fraction");
        params.goss_rand_fraction = p.at("goss_rand_fraction");
        params.seed = p.at("seed");

        std::vector<Tree> trees;
        for (const auto& tree_doc : doc.at("trees")) {
            Tree tree;
            for (const auto& node_doc : tree_doc.at("nodes")) {
                Node node;
                node.feature = node_doc.at("feature");
                node.threshold = node_doc.at("threshold");
                node.left = node_doc.at("left");
                node.right = node_doc.at("right");
                node.leaf_value = node_doc.at("leaf_value");
                node.depth = node_doc.at("depth");
                node.sample_count = node_doc.at("sample_count");
                tree.nodes.push_back(node);
            }
            if (tree.nodes.empty()) throw DataError("model JSON contains an empty tree");
            trees.push_back(std::move(tree));
        }
        return GbdtModel(doc.at("base_score"), std::move(trees), params, doc.at("schema_width"));
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed model JSON: ") + e.what());
    }
}

void GbdtModel::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open for writing: " + path.string());
    out << to_json_string() << "\n";
    if (!out) throw DataError("write failed: " + path.string());
}

GbdtModel GbdtModel::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open model file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_string(buf.str());
}

GbdtTrainer::GbdtTrainer(ClassifierParams params) : params_(params) { params_.validate(); }

std::shared_ptr<const BinaryClassifier> GbdtTrainer::fit(std::span<const LabeledSample> samples) const {
    return std::make_shared<const GbdtModel>(fit_gbdt(samples, params_));
}

std::size_t GbdtTrainer::min_fit_size() const {
    return std::max<std::size_t>(2 * static_cast<std::size_t>(params_.min_data_in_leaf), 10);
}

} // namespace oasw
