#include "citycomplex/csv.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>

#include "citycomplex/errors.hpp"

namespace citycomplex::csv {

std::optional<std::size_t> Table::column(const std::string& name) const {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
}

std::vector<std::string> split_line(const std::string& line, char delimiter) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(delimiter, start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    // Trim surrounding whitespace and stray CR from each field.
    for (auto& f : fields) {
        std::size_t b = f.find_first_not_of(" \t\r");
        std::size_t e = f.find_last_not_of(" \t\r");
        f = (b == std::string::npos) ? std::string{} : f.substr(b, e - b + 1);
    }
    return fields;
}

Table read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("FileNotFound", "cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw IngestError("EmptyFile", path + " has no header row");

    Table table;
    std::size_t commas = std::count(line.begin(), line.end(), ',');
    std::size_t tabs = std::count(line.begin(), line.end(), '\t');
    table.delimiter = tabs > commas ? '\t' : ',';
    table.header = split_line(line, table.delimiter);

    std::size_t row_number = 1;
    while (std::getline(in, line)) {
        ++row_number;
        if (line.empty() || line == "\r") continue;
        auto fields = split_line(line, table.delimiter);
        if (fields.size() != table.header.size()) {
            throw IngestError("RaggedRow", path + " row " + std::to_string(row_number) +
                                              " has " + std::to_string(fields.size()) +
                                              " fields, expected " +
                                              std::to_string(table.header.size()));
        }
        table.rows.push_back(std::move(fields));
    }
    return table;
}

void write_file(const std::string& path, const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path);
    if (!out) throw IngestError("FileNotWritable", "cannot write " + path);
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out << ',';
        out << header[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << row[i];
        }
        out << '\n';
    }
}

double parse_double(const std::string& field, std::size_t row_number) {
    errno = 0;
    char* end = nullptr;
    double value = std::strtod(field.c_str(), &end);
    if (field.empty() || end != field.c_str() + field.size() || errno == ERANGE) {
        throw IngestError("BadNumber",
                          "row " + std::to_string(row_number) + ": '" + field + "'");
    }
    return value;
}

long long parse_int(const std::string& field, std::size_t row_number) {
    errno = 0;
    char* end = nullptr;
    long long value = std::strtoll(field.c_str(), &end, 10);
    if (field.empty() || end != field.c_str() + field.size() || errno == ERANGE) {
        throw IngestError("BadInteger",
                          "row " + std::to_string(row_number) + ": '" + field + "'");
    }
    return value;
}

}  // namespace citycomplex::csv
