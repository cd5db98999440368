#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "oasw/stream.hpp"

namespace oasw {

struct CsvOptions {
    std::string label_column;
    std::set<std::string> positive_labels; // raw label values mapped to 1
};

/// Load a comma-separated file with a header row. Columns whose first data
/// value does not parse as a number are treated as categorical and
/// ordinal-encoded in first-seen order; the label column is mapped to 1 iff
/// its raw value is in positive_labels. Lines starting with '#' are skipped.
/// Rows with unparseable numeric cells are rejected with their line number.
StreamSource load_csv(const std::filesystem::path& path, const CsvOptions& options);

/// Concatenate the tail fraction of `first` with all of `second`
/// (order-preserving, shared categorical encoding). Both files must have
/// identical headers. tail_fraction in (0, 1] selects the last
/// floor(tail_fraction * N) rows of the first file.
StreamSource load_csv_concat(const std::filesystem::path& first, double tail_fraction,
                             const std::filesystem::path& second, const CsvOptions& options);

/// Write a stream back out as CSV (header + one row per sample, label
/// last). Lines in `comment_header` are emitted first, prefixed with "# ".
/// Output is byte-stable for identical inputs.
void write_csv(const StreamSource& stream, const std::filesystem::path& path,
               const std::vector<std::string>& comment_header = {});

} // namespace oasw
