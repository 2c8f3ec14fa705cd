#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace citycomplex::csv {

/// One parsed delimited file: header names plus rows of string fields.
struct Table {
    char delimiter = ',';
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column index by header name, or nullopt.
    std::optional<std::size_t> column(const std::string& name) const;
};

/// Reads a delimited text file with a mandatory header row. The delimiter
/// is auto-detected between comma and tab by counting occurrences in the
/// header line. Throws IngestError on missing file or ragged rows.
Table read_file(const std::string& path);

/// Parses one line into fields. No quoting support; the input formats are
/// plain numeric/identifier columns.
std::vector<std::string> split_line(const std::string& line, char delimiter);

/// Writes rows with a header, comma-delimited, newline-terminated.
void write_file(const std::string& path, const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows);

/// Strict double parse; throws IngestError naming the row on failure.
double parse_double(const std::string& field, std::size_t row_number);

/// Strict integer parse; throws IngestError naming the row on failure.
long long parse_int(const std::string& field, std::size_t row_number);

}  // namespace citycomplex::csv
