#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "oasw/engine.hpp"
#include "oasw/gbdt.hpp"
#include "oasw/pso.hpp"
#include "oasw/report.hpp"
#include "oasw/synthetic.hpp"

namespace oasw {

/// Minimal sectioned key/value format:
///   [section]
///   key = value
/// Blank lines and lines starting with '#' or ';' are skipped. Duplicate
/// keys within a section are rejected.
class Ini {
public:
    static Ini parse(const std::string& text, const std::string& origin);
    static Ini load(const std::filesystem::path& path);

    bool has(const std::string& section, const std::string& key) const;
    const std::string* find(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key,
                       std::string fallback) const;
    void set(const std::string& section, const std::string& key, std::string value);

    std::vector<std::string> section_names() const;
    std::vector<std::string> keys(const std::string& section) const;

    /// Sections and keys in sorted order; parses back to an equal Ini.
    std::string dump() const;

private:
    std::map<std::string, std::map<std::string, std::string>> data_;
};

struct DatasetConfig {
    std::string path;
    std::string second_path;           // optional concatenation source
    double concat_tail_fraction = 1.0; // tail of `path` kept when concatenating
    std::string label_column = "label";
    std::vector<std::string> positive_labels = {"1"};
    std::size_t decimate_keep_every = 1;
    double split_fraction = 0.1;
};

struct BaselineConfig {
    std::string detector = "ddm";
    std::size_t retrain_window = 0; // 0: defaults to oasw.t_prime_max
    std::size_t report_window = 0;  // 0: defaults to oasw.t
};

struct OutputConfig {
    std::string directory = "out";
    ReportFormats formats;
};

/// Everything a command run needs, resolved from one config file. Each
/// tunable section is either fixed parameters or `tune = true`, never both.
struct RunConfig {
    DatasetConfig dataset;
    ClassifierParams classifier;
    bool classifier_tune = false;
    OaswParams oasw;
    bool oasw_tune = false;
    PsoConfig pso;
    double tune_fraction = 1.0;
    std::size_t folds = 3;
    BaselineConfig baseline;
    OutputConfig output;
    SyntheticDriftSpec synth;
    std::size_t synth_length = 0; // 0 unless a [synth] section was given
    std::uint64_t seed = 1;
    std::size_t jobs = 1;

    static RunConfig from_ini(const Ini& ini);
    static RunConfig from_file(const std::filesystem::path& path);

    /// Full snapshot of the effective configuration, defaults included;
    /// loading it back reproduces this RunConfig.
    std::string resolved_ini() const;
};

std::string classifier_params_ini(const ClassifierParams& params);
std::string oasw_params_ini(const OaswParams& params);

} // namespace oasw
