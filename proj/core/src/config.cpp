#include "oasw/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "oasw/detectors.hpp"
#include "oasw/error.hpp"
#include "oasw/util.hpp"

namespace oasw {

Ini Ini::parse(const std::string& text, const std::string& origin) {
    Ini ini;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        const std::string line = trim(raw);
        const std::string where = origin + ":" + std::to_string(lineno);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw ConfigError(where + ": malformed section header '" + line + "'");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) throw ConfigError(where + ": empty section name");
            ini.data_[section];
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(where + ": expected 'key = value', got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(where + ": empty key");
        if (section.empty()) throw ConfigError(where + ": key '" + key + "' before any [section]");
        if (!ini.data_[section].emplace(key, value).second) {
            throw ConfigError(where + ": duplicate key '" + key + "' in [" + section + "]");
        }
    }
    return ini;
}

Ini Ini::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path.string());
}

bool Ini::has(const std::string& section, const std::string& key) const {
    return find(section, key) != nullptr;
}

const std::string* Ini::find(const std::string& section, const std::string& key) const {
    const auto sec = data_.find(section);
    if (sec == data_.end()) return nullptr;
    const auto kv = sec->second.find(key);
    return kv == sec->second.end() ? nullptr : &kv->second;
}

std::string Ini::get(const std::string& section, const std::string& key) const {
    const std::string* value = find(section, key);
    if (!value) throw ConfigError("missing required key '" + key + "' in [" + section + "]");
    return *value;
}

std::string Ini::get_or(const std::string& section, const std::string& key,
                        std::string fallback) const {
    const std::string* value = find(section, key);
    return value ? *value : std::move(fallback);
}

void Ini::set(const std::string& section, const std::string& key, std::string value) {
    data_[section][key] = std::move(value);
}

std::vector<std::string> Ini::section_names() const {
    std::vector<std::string> names;
    names.reserve(data_.size());
    for (const auto& [name, kv] : data_) names.push_back(name);
    return names;
}

std::vector<std::string> Ini::keys(const std::string& section) const {
    std::vector<std::string> out;
    const auto sec = data_.find(section);
    if (sec == data_.end()) return out;
    out.reserve(sec->second.size());
    for (const auto& [key, value] : sec->second) out.push_back(key);
    return out;
}

std::string Ini::dump() const {
    std::string out;
    bool first = true;
    for (const auto& [section, kv] : data_) {
        if (!first) out += '\n';
        first = false;
        out += '[' + section + "]\n";
        for (const auto& [key, value] : kv) out += key + " = " + value + "\n";
    }
    return out;
}

namespace {

bool parse_bool(const std::string& value, const std::string& context) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw ConfigError(context + ": expected a boolean, got '" + value + "'");
}

std::size_t parse_size(const std::string& value, const std::string& context) {
    const std::int64_t n = parse_int(value, context);
    if (n < 0) throw ConfigError(context + ": must be nonnegative, got " + value);
    return static_cast<std::size_t>(n);
}

void reject_unknown_keys(const Ini& ini, const std::string& section,
                         std::initializer_list<const char*> known) {
    for (const auto& key : ini.keys(section)) {
        const bool ok = std::any_of(known.begin(), known.end(),
                                    [&](const char* k) { return key == k; });
        if (!ok) throw ConfigError("unknown key '" + key + "' in [" + section + "]");
    }
}

std::string key_context(const std::string& section, const std::string& key) {
    return "[" + section + "] " + key;
}

bool get_bool(const Ini& ini, const std::string& section, const std::string& key,
              bool fallback) {
    const std::string* v = ini.find(section, key);
    return v ? parse_bool(*v, key_context(section, key)) : fallback;
}

double get_double(const Ini& ini, const std::string& section, const std::string& key,
                  double fallback) {
    const std::string* v = ini.find(section, key);
    return v ? parse_double(*v, key_context(section, key)) : fallback;
}

std::size_t get_size(const Ini& ini, const std::string& section, const std::string& key,
                     std::size_t fallback) {
    const std::string* v = ini.find(section, key);
    return v ? parse_size(*v, key_context(section, key)) : fallback;
}

int get_int(const Ini& ini, const std::string& section, const std::string& key, int fallback) {
    const std::string* v = ini.find(section, key);
    return v ? static_cast<int>(parse_int(*v, key_context(section, key))) : fallback;
}

bool any_key_present(const Ini& ini, const std::string& section,
                     std::initializer_list<const char*> keys) {
    return std::any_of(keys.begin(), keys.end(),
                       [&](const char* k) { return ini.has(section, k); });
}

std::vector<std::string> parse_list(const std::string& value) {
    std::vector<std::string> items;
    for (auto& piece : split(value, ',')) {
        if (!piece.empty()) items.push_back(std::move(piece));
    }
    return items;
}

} // namespace

RunConfig RunConfig::from_ini(const Ini& ini) {
    static const std::vector<std::string> known_sections = {
        "run", "dataset", "classifier", "oasw", "pso", "baseline", "output", "synth"};
    for (const auto& section : ini.section_names()) {
        if (std::find(known_sections.begin(), known_sections.end(), section) ==
            known_sections.end()) {
            throw ConfigError("unknown section [" + section + "]");
        }
    }

    RunConfig cfg;

    reject_unknown_keys(ini, "run", {"seed", "jobs"});
    cfg.seed = get_size(ini, "run", "seed", 1);
    cfg.jobs = get_size(ini, "run", "jobs", 1);
    if (cfg.jobs == 0) throw ConfigError("[run] jobs must be >= 1");

    reject_unknown_keys(ini, "dataset",
                        {"path", "second_path", "concat_tail_fraction", "label_column",
                         "positive_labels", "decimate_keep_every", "split_fraction"});
    cfg.dataset.path = ini.get_or("dataset", "path", "");
    cfg.dataset.second_path = ini.get_or("dataset", "second_path", "");
    cfg.dataset.concat_tail_fraction = get_double(ini, "dataset", "concat_tail_fraction", 1.0);
    cfg.dataset.label_column = ini.get_or("dataset", "label_column", "label");
    if (ini.has("dataset", "positive_labels")) {
        cfg.dataset.positive_labels = parse_list(ini.get("dataset", "positive_labels"));
        if (cfg.dataset.positive_labels.empty()) {
            throw ConfigError("[dataset] positive_labels must list at least one value");
        }
    }
    cfg.dataset.decimate_keep_every = get_size(ini, "dataset", "decimate_keep_every", 1);
    if (cfg.dataset.decimate_keep_every == 0) {
        throw ConfigError("[dataset] decimate_keep_every must be >= 1");
    }
    cfg.dataset.split_fraction = get_double(ini, "dataset", "split_fraction", 0.1);
    if (!(cfg.dataset.split_fraction > 0.0 && cfg.dataset.split_fraction < 1.0)) {
        throw ConfigError("[dataset] split_fraction must lie in (0, 1)");
    }
    if (!(cfg.dataset.concat_tail_fraction > 0.0 && cfg.dataset.concat_tail_fraction <= 1.0)) {
        throw ConfigError("[dataset] concat_tail_fraction must lie in (0, 1]");
    }

    static const std::initializer_list<const char*> classifier_param_keys = {
        "n_estimators",  "max_depth",         "learning_rate",      "num_leaves",
        "min_data_in_leaf", "goss_enabled",   "goss_top_fraction",  "goss_rand_fraction",
        "seed"};
    reject_unknown_keys(ini, "classifier",
                        {"tune", "n_estimators", "max_depth", "learning_rate", "num_leaves",
                         "min_data_in_leaf", "goss_enabled", "goss_top_fraction",
                         "goss_rand_fraction", "seed"});
    cfg.classifier_tune = get_bool(ini, "classifier", "tune", false);
    if (cfg.classifier_tune && any_key_present(ini, "classifier", classifier_param_keys)) {
        throw ConfigError("[classifier]: set fixed parameters or tune = true, not both");
    }
    cfg.classifier.n_estimators = get_int(ini, "classifier", "n_estimators", 100);
    cfg.classifier.max_depth = get_int(ini, "classifier", "max_depth", 8);
    cfg.classifier.learning_rate = get_double(ini, "classifier", "learning_rate", 0.1);
    cfg.classifier.num_leaves = get_int(ini, "classifier", "num_leaves", 31);
    cfg.classifier.min_data_in_leaf = get_int(ini, "classifier", "min_data_in_leaf", 20);
    cfg.classifier.goss_enabled = get_bool(ini, "classifier", "goss_enabled", false);
    cfg.classifier.goss_top_fraction = get_double(ini, "classifier", "goss_top_fraction", 0.2);
    cfg.classifier.goss_rand_fraction = get_double(ini, "classifier", "goss_rand_fraction", 0.1);
    cfg.classifier.seed = get_size(ini, "classifier", "seed", cfg.seed);
    cfg.classifier.validate();

    static const std::initializer_list<const char*> oasw_param_keys = {"alpha", "beta", "t",
                                                                       "t_prime_max"};
    reject_unknown_keys(ini, "oasw", {"tune", "alpha", "beta", "t", "t_prime_max"});
    cfg.oasw_tune = get_bool(ini, "oasw", "tune", false);
    if (cfg.oasw_tune && any_key_present(ini, "oasw", oasw_param_keys)) {
        throw ConfigError("[oasw]: set fixed parameters or tune = true, not both");
    }
    cfg.oasw.alpha = get_double(ini, "oasw", "alpha", 0.98);
    cfg.oasw.beta = get_double(ini, "oasw", "beta", 0.95);
    cfg.oasw.t = get_size(ini, "oasw", "t", 300);
    cfg.oasw.t_prime_max = get_size(ini, "oasw", "t_prime_max", 1000);
    cfg.oasw.validate();

    reject_unknown_keys(ini, "pso",
                        {"swarm_size", "inertia", "cognitive", "social",
                         "velocity_clamp_fraction", "max_evaluations", "seed", "tune_fraction",
                         "folds"});
    cfg.pso.swarm_size = get_size(ini, "pso", "swarm_size", 20);
    cfg.pso.inertia = get_double(ini, "pso", "inertia", 0.7298);
    cfg.pso.cognitive = get_double(ini, "pso", "cognitive", 1.4962);
    cfg.pso.social = get_double(ini, "pso", "social", 1.4962);
    cfg.pso.velocity_clamp_fraction = get_double(ini, "pso", "velocity_clamp_fraction", 0.2);
    cfg.pso.max_evaluations = get_size(ini, "pso", "max_evaluations", 400);
    cfg.pso.seed = get_size(ini, "pso", "seed", cfg.seed);
    cfg.pso.jobs = cfg.jobs;
    cfg.pso.validate();
    cfg.tune_fraction = get_double(ini, "pso", "tune_fraction", 1.0);
    if (!(cfg.tune_fraction > 0.0 && cfg.tune_fraction <= 1.0)) {
        throw ConfigError("[pso] tune_fraction must lie in (0, 1]");
    }
    cfg.folds = get_size(ini, "pso", "folds", 3);
    if (cfg.folds == 0) throw ConfigError("[pso] folds must be >= 1");

    reject_unknown_keys(ini, "baseline", {"detector", "retrain_window", "report_window"});
    cfg.baseline.detector = ini.get_or("baseline", "detector", "ddm");
    if (cfg.baseline.detector != "none") {
        detector_from_string(cfg.baseline.detector); // validates the name
    }
    cfg.baseline.retrain_window = get_size(ini, "baseline", "retrain_window", 0);
    cfg.baseline.report_window = get_size(ini, "baseline", "report_window", 0);

    reject_unknown_keys(ini, "output", {"directory", "formats"});
    cfg.output.directory = ini.get_or("output", "directory", "out");
    if (ini.has("output", "formats")) {
        cfg.output.formats = ReportFormats{false, false, false};
        for (const auto& item : parse_list(ini.get("output", "formats"))) {
            if (item == "summary") cfg.output.formats.summary_json = true;
            else if (item == "curve") cfg.output.formats.curve_csv = true;
            else if (item == "events") cfg.output.formats.events_jsonl = true;
            else throw ConfigError("[output] formats: unknown format '" + item +
                                   "' (valid: summary, curve, events)");
        }
    }

    const auto sections = ini.section_names();
    if (std::find(sections.begin(), sections.end(), "synth") != sections.end()) {
        reject_unknown_keys(ini, "synth",
                            {"kind", "length", "change_points", "transition_width", "period",
                             "noise_rate", "dims", "class_separation", "seed"});
        cfg.synth_length = parse_size(ini.get("synth", "length"), "[synth] length");
        if (cfg.synth_length == 0) throw ConfigError("[synth] length must be >= 1");
        cfg.synth.kind = drift_kind_from_string(ini.get_or("synth", "kind", "sudden"));
        if (ini.has("synth", "change_points")) {
            cfg.synth.change_points.clear();
            for (const auto& item : parse_list(ini.get("synth", "change_points"))) {
                cfg.synth.change_points.push_back(parse_size(item, "[synth] change_points"));
            }
        }
        cfg.synth.transition_width = get_size(ini, "synth", "transition_width", 0);
        cfg.synth.period = get_size(ini, "synth", "period", 0);
        cfg.synth.noise_rate = get_double(ini, "synth", "noise_rate", 0.0);
        cfg.synth.dims = get_size(ini, "synth", "dims", 2);
        cfg.synth.class_separation = get_double(ini, "synth", "class_separation", 2.0);
        cfg.synth.seed = get_size(ini, "synth", "seed", cfg.seed);
        cfg.synth.validate(cfg.synth_length);
    }
    return cfg;
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
    return from_ini(Ini::load(path));
}

std::string RunConfig::resolved_ini() const {
    Ini ini;
    ini.set("run", "seed", std::to_string(seed));
    ini.set("run", "jobs", std::to_string(jobs));

    ini.set("dataset", "path", dataset.path);
    if (!dataset.second_path.empty()) {
        ini.set("dataset", "second_path", dataset.second_path);
        ini.set("dataset", "concat_tail_fraction", format_double(dataset.concat_tail_fraction));
    }
    ini.set("dataset", "label_column", dataset.label_column);
    std::string labels;
    for (const auto& label : dataset.positive_labels) {
        if (!labels.empty()) labels += ',';
        labels += label;
    }
    ini.set("dataset", "positive_labels", labels);
    ini.set("dataset", "decimate_keep_every", std::to_string(dataset.decimate_keep_every));
    ini.set("dataset", "split_fraction", format_double(dataset.split_fraction));

    if (classifier_tune) {
        ini.set("classifier", "tune", "true");
    } else {
        ini.set("classifier", "tune", "false");
        ini.set("classifier", "n_estimators", std::to_string(classifier.n_estimators));
        ini.set("classifier", "max_depth", std::to_string(classifier.max_depth));
        ini.set("classifier", "learning_rate", format_double(classifier.learning_rate));
        ini.set("classifier", "num_leaves", std::to_string(classifier.num_leaves));
        ini.set("classifier", "min_data_in_leaf", std::to_string(classifier.min_data_in_leaf));
        ini.set("classifier", "goss_enabled", classifier.goss_enabled ? "true" : "false");
        ini.set("classifier", "goss_top_fraction", format_double(classifier.goss_top_fraction));
        ini.set("classifier", "goss_rand_fraction", format_double(classifier.goss_rand_fraction));
        ini.set("classifier", "seed", std::to_string(classifier.seed));
    }

    if (oasw_tune) {
        ini.set("oasw", "tune", "true");
    } else {
        ini.set("oasw", "tune", "false");
        ini.set("oasw", "alpha", format_double(oasw.alpha));
        ini.set("oasw", "beta", format_double(oasw.beta));
        ini.set("oasw", "t", std::to_string(oasw.t));
        ini.set("oasw", "t_prime_max", std::to_string(oasw.t_prime_max));
    }

    ini.set("pso", "swarm_size", std::to_string(pso.swarm_size));
    ini.set("pso", "inertia", format_double(pso.inertia));
    ini.set("pso", "cognitive", format_double(pso.cognitive));
    ini.set("pso", "social", format_double(pso.social));
    ini.set("pso", "velocity_clamp_fraction", format_double(pso.velocity_clamp_fraction));
    ini.set("pso", "max_evaluations", std::to_string(pso.max_evaluations));
    ini.set("pso", "seed", std::to_string(pso.seed));
    ini.set("pso", "tune_fraction", format_double(tune_fraction));
    ini.set("pso", "folds", std::to_string(folds));

    ini.set("baseline", "detector", baseline.detector);
    ini.set("baseline", "retrain_window", std::to_string(baseline.retrain_window));
    ini.set("baseline", "report_window", std::to_string(baseline.report_window));

    ini.set("output", "directory", output.directory);
    std::string formats;
    if (output.formats.summary_json) formats += "summary";
    if (output.formats.curve_csv) formats += formats.empty() ? "curve" : ",curve";
    if (output.formats.events_jsonl) formats += formats.empty() ? "events" : ",events";
    ini.set("output", "formats", formats);

    if (synth_length > 0) {
        ini.set("synth", "kind", to_string(synth.kind));
        ini.set("synth", "length", std::to_string(synth_length));
        if (!synth.change_points.empty()) {
            std::string points;
            for (const std::size_t p : synth.change_points) {
                if (!points.empty()) points += ',';
                points += std::to_string(p);
            }
            ini.set("synth", "change_points", points);
        }
        if (synth.transition_width > 0) {
            ini.set("synth", "transition_width", std::to_string(synth.transition_width));
        }
        if (synth.period > 0) ini.set("synth", "period", std::to_string(synth.period));
        ini.set("synth", "noise_rate", format_double(synth.noise_rate));
        ini.set("synth", "dims", std::to_string(synth.dims));
        ini.set("synth", "class_separation", format_double(synth.class_separation));
        ini.set("synth", "seed", std::to_string(synth.seed));
    }
    return ini.dump();
}

std::string classifier_params_ini(const ClassifierParams& params) {
    Ini ini;
    ini.set("classifier", "tune", "false");
    ini.set("classifier", "n_estimators", std::to_string(params.n_estimators));
    ini.set("classifier", "max_depth", std::to_string(params.max_depth));
    ini.set("classifier", "learning_rate", format_double(params.learning_rate));
    ini.set("classifier", "num_leaves", std::to_string(params.num_leaves));
    ini.set("classifier", "min_data_in_leaf", std::to_string(params.min_data_in_leaf));
    ini.set("classifier", "goss_enabled", params.goss_enabled ? "true" : "false");
    ini.set("classifier", "goss_top_fraction", format_double(params.goss_top_fraction));
    ini.set("classifier", "goss_rand_fraction", format_double(params.goss_rand_fraction));
    ini.set("classifier", "seed", std::to_string(params.seed));
    return ini.dump();
}

std::string oasw_params_ini(const OaswParams& params) {
    Ini ini;
    ini.set("oasw", "tune", "false");
    ini.set("oasw", "alpha", format_double(params.alpha));
    ini.set("oasw", "beta", format_double(params.beta));
    ini.set("oasw", "t", std::to_string(params.t));
    ini.set("oasw", "t_prime_max", std::to_string(params.t_prime_max));
    return ini.dump();
}

} // namespace oasw
