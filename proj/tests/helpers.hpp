#pragma once

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "citycomplex/core.hpp"

namespace testutil {

inline constexpr double kBaseLon = 126.9780;
inline constexpr double kBaseLat = 37.5665;
inline constexpr double kKmPerDegLat = 6371.0088 * 3.14159265358979323846 / 180.0;

/// Store at a planar offset (meters east/north) from a fixed urban base point.
inline citycomplex::StorePoint store_at(long long id, double east_m, double north_m,
                                        const std::string& category = "retail/s1",
                                        int year = 2016) {
    citycomplex::StorePoint s;
    s.store_id = id;
    s.lat = kBaseLat + (north_m / 1000.0) / kKmPerDegLat;
    s.lon = kBaseLon + (east_m / 1000.0) /
                           (kKmPerDegLat * std::cos(kBaseLat * 3.14159265358979323846 / 180.0));
    s.category = category;
    s.year = year;
    return s;
}

/// Unique scratch directory under the system temp root.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        path_ = std::filesystem::temp_directory_path() /
                ("citycomplex_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    std::string str() const { return path_.string(); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

inline void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace testutil
