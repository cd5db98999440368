#pragma once

#include <filesystem>
#include <string>

#include "oasw/config.hpp"

namespace oasw {

/// Command bodies behind the CLI subcommands. Each returns a process exit
/// code (0 ok, 2 config error, 3 data error, 4 runtime error) and reports
/// failures on stderr.
int cmd_train(const RunConfig& config, const std::filesystem::path& model_out);
int cmd_run_oasw(const RunConfig& config, const std::filesystem::path& model_path);
int cmd_baseline(const RunConfig& config, const std::filesystem::path& model_path);
int cmd_synth(const RunConfig& config, const std::filesystem::path& csv_out);
int cmd_tune(const RunConfig& config, const std::string& target,
             const std::filesystem::path& model_path, const std::filesystem::path& fragment_out);

} // namespace oasw
