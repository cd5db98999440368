#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace oasw {

/// Shortest round-trip decimal representation of a double ("0.05", not
/// "0.050000000000000003"). Used everywhere a float reaches a file so that
/// emitted artifacts are byte-stable.
std::string format_double(double value);

/// Fixed-point decimal with `precision` digits, locale-independent
/// ("99.92"-style display values).
std::string format_fixed(double value, int precision);

std::string trim(std::string_view s);

/// Split on a delimiter, trimming each piece. Empty pieces are kept.
std::vector<std::string> split(std::string_view s, char delim);

double parse_double(std::string_view s, const std::string& context);
std::int64_t parse_int(std::string_view s, const std::string& context);

/// splitmix64 step; used to derive independent substream seeds from one
/// run seed without correlated low bits.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

/// Current wall-clock time as "YYYY-MM-DDTHH:MM:SSZ".
std::string now_iso8601();

} // namespace oasw
