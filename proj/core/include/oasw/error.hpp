#pragma once

#include <stdexcept>
#include <string>

namespace oasw {

/// Invalid configuration: bad parameter values, malformed config files,
/// contradictory sections. CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Problems with input data: missing columns, unparseable rows, empty
/// streams, schema mismatches. CLI exit code 3.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Failures during a run that are neither config nor data problems.
/// CLI exit code 4.
class RuntimeFailure : public std::runtime_error {
public:
    explicit RuntimeFailure(const std::string& what) : std::runtime_error(what) {}
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config_error = 2;
inline constexpr int data_error = 3;
inline constexpr int runtime_error = 4;
} // namespace exit_code

} // namespace oasw
