#include "oasw/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <unordered_map>

#include "oasw/error.hpp"
#include "oasw/util.hpp"

namespace oasw {
namespace {

struct RawTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows; // cells, already trimmed
    std::vector<std::size_t> line_numbers;      // 1-based source line per row
};

RawTable read_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open CSV file: " + path.string());

    RawTable table;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        auto cells = split(line, ',');
        if (!have_header) {
            table.header = std::move(cells);
            have_header = true;
            continue;
        }
        if (cells.size() != table.header.size()) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(table.header.size()) + " cells, got " +
                            std::to_string(cells.size()));
        }
        table.rows.push_back(std::move(cells));
        table.line_numbers.push_back(line_no);
    }
    if (!have_header) throw DataError(path.string() + ": empty file (no header row)");
    return table;
}

bool parse_cell(const std::string& cell, double& out) {
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end && std::isfinite(out);
}

// Shared across concatenated files so categorical codes stay consistent.
struct Encoder {
    std::string label_column;
    std::set<std::string> positive_labels;
    std::vector<std::string> feature_names;
    std::size_t label_index = 0;
    std::vector<bool> categorical;                                   // per feature column
    std::vector<std::unordered_map<std::string, double>> categories; // per feature column

    void bind_header(const RawTable& table, const std::filesystem::path& path) {
        std::size_t label_col = table.header.size();
        for (std::size_t c = 0; c < table.header.size(); ++c) {
            if (table.header[c] == label_column) {
                label_col = c;
                break;
            }
        }
        if (label_col == table.header.size()) {
            throw DataError(path.string() + ": label column '" + label_column +
                            "' not found in header");
        }
        std::vector<std::string> names;
        for (std::size_t c = 0; c < table.header.size(); ++c) {
            if (c != label_col) names.push_back(table.header[c]);
        }
        if (feature_names.empty()) {
            feature_names = std::move(names);
            label_index = label_col;
            categorical.assign(feature_names.size(), false);
            categories.resize(feature_names.size());
        } else if (names != feature_names || label_col != label_index) {
            throw DataError(path.string() + ": header differs from the first file's header");
        }
    }

    // Column kind is fixed by the first data row seen for that column.
    void infer_kinds(const RawTable& table) {
        if (table.rows.empty()) return;
        if (!kinds_inferred_) {
            const auto& row = table.rows.front();
            std::size_t f = 0;
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c == label_index) continue;
                double value = 0.0;
                categorical[f] = !parse_cell(row[c], value);
                ++f;
            }
            kinds_inferred_ = true;
        }
    }

    void append_rows(const RawTable& table, std::size_t first_row,
                     const std::filesystem::path& path, std::vector<LabeledSample>& out) {
        for (std::size_t r = first_row; r < table.rows.size(); ++r) {
            const auto& row = table.rows[r];
            LabeledSample sample;
            sample.features.reserve(feature_names.size());
            std::size_t f = 0;
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c == label_index) continue;
                if (categorical[f]) {
                    auto& codes = categories[f];
                    auto [it, inserted] =
                        codes.try_emplace(row[c], static_cast<double>(codes.size()));
                    sample.features.push_back(it->second);
                } else {
                    double value = 0.0;
                    if (!parse_cell(row[c], value)) {
                        throw DataError(path.string() + ":" +
                                        std::to_string(table.line_numbers[r]) +
                                        ": unparseable numeric value '" + row[c] +
                                        "' in column '" + feature_names[f] + "'");
                    }
                    sample.features.push_back(value);
                }
                ++f;
            }
            sample.label = positive_labels.count(row[label_index]) ? 1 : 0;
            out.push_back(std::move(sample));
        }
    }

private:
    bool kinds_inferred_ = false;
};

} // namespace

StreamSource load_csv(const std::filesystem::path& path, const CsvOptions& options) {
    RawTable table = read_table(path);
    if (table.rows.empty()) throw DataError(path.string() + ": empty stream (no data rows)");

    Encoder encoder;
    encoder.label_column = options.label_column;
    encoder.positive_labels = options.positive_labels;
    encoder.bind_header(table, path);
    encoder.infer_kinds(table);

    std::vector<LabeledSample> samples;
    samples.reserve(table.rows.size());
    encoder.append_rows(table, 0, path, samples);
    return StreamSource(StreamSchema{encoder.feature_names}, std::move(samples));
}

StreamSource load_csv_concat(const std::filesystem::path& first, double tail_fraction,
                             const std::filesystem::path& second, const CsvOptions& options) {
    if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
        throw ConfigError("load_csv_concat: tail_fraction must lie in (0, 1]");
    }
    RawTable head = read_table(first);
    RawTable tail = read_table(second);
    if (head.rows.empty() && tail.rows.empty()) {
        throw DataError(first.string() + " + " + second.string() + ": empty stream");
    }

    Encoder encoder;
    encoder.label_column = options.label_column;
    encoder.positive_labels = options.positive_labels;
    encoder.bind_header(head, first);
    encoder.bind_header(tail, second);
    encoder.infer_kinds(head.rows.empty() ? tail : head);

    const auto keep = static_cast<std::size_t>(
        std::floor(tail_fraction * static_cast<double>(head.rows.size())));
    const std::size_t first_row = head.rows.size() - keep;

    std::vector<LabeledSample> samples;
    samples.reserve(keep + tail.rows.size());
    encoder.append_rows(head, first_row, first, samples);
    encoder.append_rows(tail, 0, second, samples);
    if (samples.empty()) throw DataError("load_csv_concat: selection yields an empty stream");
    return StreamSource(StreamSchema{encoder.feature_names}, std::move(samples));
}

void write_csv(const StreamSource& stream, const std::filesystem::path& path,
               const std::vector<std::string>& comment_header) {
    std::ofstream out(path, std::ios::binary); // binary: keep \n on every platform
    if (!out) throw DataError("cannot open for writing: " + path.string());

    for (const auto& line : comment_header) out << "# " << line << "\n";
    const auto& names = stream.schema().feature_names;
    for (const auto& name : names) out << name << ",";
    out << "label\n";
    for (const auto& sample : stream.samples()) {
        for (double v : sample.features) out << format_double(v) << ",";
        out << sample.label << "\n";
    }
    if (!out) throw DataError("write failed: " + path.string());
}

} // namespace oasw
