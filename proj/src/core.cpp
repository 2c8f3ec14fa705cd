#include "citycomplex/core.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

#include "citycomplex/csv.hpp"
#include "citycomplex/errors.hpp"

namespace citycomplex {

bool is_valid_timeslot(const std::string& label) {
    const auto& labels = timeslot_labels();
    return std::find(labels.begin(), labels.end(), label) != labels.end();
}

std::string primary_category(const std::string& category) {
    std::size_t pos = category.find('/');
    return pos == std::string::npos ? category : category.substr(0, pos);
}

namespace {

std::size_t require_column(const csv::Table& table, const std::string& name,
                           const std::string& path) {
    auto idx = table.column(name);
    if (!idx) throw IngestError("MissingColumn", path + " lacks column '" + name + "'");
    return *idx;
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

std::vector<StorePoint> ingest_stores(const std::string& path, int year) {
    csv::Table table = csv::read_file(path);
    std::size_t c_id = require_column(table, "store_id", path);
    std::size_t c_lon = require_column(table, "lon", path);
    std::size_t c_lat = require_column(table, "lat", path);
    std::size_t c_cat = require_column(table, "category", path);
    auto c_sub = table.column("subcategory");

    std::vector<StorePoint> stores;
    stores.reserve(table.rows.size());
    std::unordered_set<long long> seen;
    std::size_t row_number = 1;
    for (const auto& row : table.rows) {
        ++row_number;
        StorePoint s;
        s.store_id = csv::parse_int(row[c_id], row_number);
        s.lon = csv::parse_double(row[c_lon], row_number);
        s.lat = csv::parse_double(row[c_lat], row_number);
        s.category = row[c_cat];
        if (c_sub && !row[*c_sub].empty()) s.category += "/" + row[*c_sub];
        s.year = year;

        if (s.lat < -90.0 || s.lat > 90.0 || s.lon < -180.0 || s.lon > 180.0) {
            throw IngestError("CoordinateOutOfRange",
                              path + " row " + std::to_string(row_number));
        }
        if (s.category.empty()) {
            throw IngestError("EmptyCategory", path + " row " + std::to_string(row_number));
        }
        if (!seen.insert(s.store_id).second) {
            throw IngestError("DuplicateId", path + " store_id " + std::to_string(s.store_id) +
                                                 " at row " + std::to_string(row_number));
        }
        stores.push_back(std::move(s));
    }
    return stores;
}

std::vector<WeatherRecord> ingest_weather(const std::string& path) {
    csv::Table table = csv::read_file(path);
    std::size_t c_year = require_column(table, "year", path);
    std::size_t c_month = require_column(table, "month", path);
    std::size_t c_mean = require_column(table, "mean_high_temp_c", path);
    std::size_t c_max = require_column(table, "max_temp_c", path);
    std::size_t c_precip = require_column(table, "precip_mm", path);

    std::vector<WeatherRecord> records;
    std::set<std::pair<int, int>> seen;
    std::size_t row_number = 1;
    for (const auto& row : table.rows) {
        ++row_number;
        WeatherRecord w;
        w.year = static_cast<int>(csv::parse_int(row[c_year], row_number));
        w.month = static_cast<int>(csv::parse_int(row[c_month], row_number));
        w.mean_high_temp_c = csv::parse_double(row[c_mean], row_number);
        w.max_temp_c = csv::parse_double(row[c_max], row_number);
        w.precip_mm = csv::parse_double(row[c_precip], row_number);

        if (w.month < 1 || w.month > 12) {
            throw IngestError("BadMonth", path + " row " + std::to_string(row_number));
        }
        if (w.precip_mm < 0.0) {
            throw IngestError("NegativePrecip", path + " row " + std::to_string(row_number));
        }
        if (w.max_temp_c < w.mean_high_temp_c) {
            throw IngestError("TemperatureOrder",
                              path + " row " + std::to_string(row_number) +
                                  ": max_temp_c below mean_high_temp_c");
        }
        if (!seen.insert({w.year, w.month}).second) {
            throw IngestError("DuplicatePeriod",
                              path + " duplicate (" + std::to_string(w.year) + ", " +
                                  std::to_string(w.month) + ") at row " +
                                  std::to_string(row_number));
        }
        records.push_back(w);
    }
    return records;
}

std::vector<MobilityCount> ingest_mobility(const std::string& path) {
    csv::Table table = csv::read_file(path);
    std::size_t c_src = require_column(table, "source_id", path);
    std::size_t c_lon = require_column(table, "lon", path);
    std::size_t c_lat = require_column(table, "lat", path);
    std::size_t c_year = require_column(table, "year", path);
    std::size_t c_month = require_column(table, "month", path);
    std::size_t c_slot = require_column(table, "timeslot", path);
    std::size_t c_demo = require_column(table, "demographic", path);
    std::size_t c_count = require_column(table, "count", path);

    std::vector<MobilityCount> counts;
    counts.reserve(table.rows.size());
    std::size_t row_number = 1;
    for (const auto& row : table.rows) {
        ++row_number;
        MobilityCount m;
        m.source_id = row[c_src];
        m.lon = csv::parse_double(row[c_lon], row_number);
        m.lat = csv::parse_double(row[c_lat], row_number);
        m.year = static_cast<int>(csv::parse_int(row[c_year], row_number));
        m.month = static_cast<int>(csv::parse_int(row[c_month], row_number));
        m.timeslot = row[c_slot];
        m.demographic = row[c_demo];
        m.count = csv::parse_double(row[c_count], row_number);

        if (!is_valid_timeslot(m.timeslot)) {
            throw IngestError("UnknownTimeslot", path + " row " + std::to_string(row_number) +
                                                     ": '" + m.timeslot + "'");
        }
        if (m.count < 0.0) {
            throw IngestError("NegativeCount", path + " row " + std::to_string(row_number));
        }
        counts.push_back(std::move(m));
    }
    return counts;
}

std::vector<ClusterAttribute> ingest_cluster_attributes(const std::string& path) {
    csv::Table table = csv::read_file(path);
    std::size_t c_id = require_column(table, "cluster_id", path);
    std::size_t c_green = require_column(table, "green_area_m2", path);
    auto c_metro = table.column("metro_station_ids");

    std::vector<ClusterAttribute> attrs;
    std::unordered_set<long long> seen;
    std::size_t row_number = 1;
    for (const auto& row : table.rows) {
        ++row_number;
        ClusterAttribute a;
        a.cluster_id = csv::parse_int(row[c_id], row_number);
        a.green_area_m2 = csv::parse_double(row[c_green], row_number);
        if (a.green_area_m2 < 0.0) {
            throw IngestError("NegativeGreenArea", path + " row " + std::to_string(row_number));
        }
        if (!seen.insert(a.cluster_id).second) {
            throw IngestError("DuplicateId", path + " cluster_id " +
                                                std::to_string(a.cluster_id));
        }
        if (c_metro) {
            // Semicolon-separated list inside one CSV field.
            std::istringstream ss(row[*c_metro]);
            std::string id;
            while (std::getline(ss, id, ';')) {
                if (!id.empty()) a.metro_station_ids.push_back(id);
            }
        }
        attrs.push_back(std::move(a));
    }
    return attrs;
}

void write_stores(const std::string& path, const std::vector<StorePoint>& stores) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(stores.size());
    for (const auto& s : stores) {
        rows.push_back({std::to_string(s.store_id), format_double(s.lon),
                        format_double(s.lat), s.category});
    }
    csv::write_file(path, {"store_id", "lon", "lat", "category"}, rows);
}

void write_weather(const std::string& path, const std::vector<WeatherRecord>& records) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& w : records) {
        rows.push_back({std::to_string(w.year), std::to_string(w.month),
                        format_double(w.mean_high_temp_c), format_double(w.max_temp_c),
                        format_double(w.precip_mm)});
    }
    csv::write_file(path, {"year", "month", "mean_high_temp_c", "max_temp_c", "precip_mm"},
                    rows);
}

void write_mobility(const std::string& path, const std::vector<MobilityCount>& counts) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(counts.size());
    for (const auto& m : counts) {
        rows.push_back({m.source_id, format_double(m.lon), format_double(m.lat),
                        std::to_string(m.year), std::to_string(m.month), m.timeslot,
                        m.demographic, format_double(m.count)});
    }
    csv::write_file(path,
                    {"source_id", "lon", "lat", "year", "month", "timeslot", "demographic",
                     "count"},
                    rows);
}

}  // namespace citycomplex
