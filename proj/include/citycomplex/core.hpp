#pragma once

#include <string>
#include <vector>

namespace citycomplex {

/// One point-of-interest snapshot. Category codes are hierarchical
/// ("retail" or "retail/grocery"); the first segment is the primary group.
struct StorePoint {
    long long store_id = 0;
    double lon = 0.0;  // degrees WGS84
    double lat = 0.0;  // degrees WGS84
    std::string category;
    int year = 0;
};

/// Monthly weather summary for one (year, month).
struct WeatherRecord {
    int year = 0;
    int month = 0;
    double mean_high_temp_c = 0.0;
    double max_temp_c = 0.0;
    double precip_mm = 0.0;
};

/// Closed timeslot vocabulary for mobility files.
inline const std::vector<std::string>& timeslot_labels() {
    static const std::vector<std::string> labels = {"07-24", "07-09", "09-18",
                                                    "18-20", "20-24", "ALL"};
    return labels;
}

bool is_valid_timeslot(const std::string& label);

/// One aggregated mobility observation at a station or grid cell.
struct MobilityCount {
    std::string source_id;
    double lon = 0.0;
    double lat = 0.0;
    int year = 0;
    int month = 0;
    std::string timeslot;
    std::string demographic;
    double count = 0.0;
};

/// Pre-aggregated per-cluster attributes.
struct ClusterAttribute {
    long long cluster_id = 0;
    double green_area_m2 = 0.0;
    std::vector<std::string> metro_station_ids;
};

/// Returns the primary group (text before the first '/') of a category code.
std::string primary_category(const std::string& category);

// Ingestion is all-or-nothing per file: the first bad row aborts with its
// 1-based row number in the error message.

std::vector<StorePoint> ingest_stores(const std::string& path, int year);
std::vector<WeatherRecord> ingest_weather(const std::string& path);
std::vector<MobilityCount> ingest_mobility(const std::string& path);
std::vector<ClusterAttribute> ingest_cluster_attributes(const std::string& path);

void write_stores(const std::string& path, const std::vector<StorePoint>& stores);
void write_weather(const std::string& path, const std::vector<WeatherRecord>& records);
void write_mobility(const std::string& path, const std::vector<MobilityCount>& counts);

}  // namespace citycomplex
