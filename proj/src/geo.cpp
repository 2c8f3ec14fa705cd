#include "citycomplex/geo.hpp"

#include <algorithm>
#include <cmath>

#include "citycomplex/errors.hpp"

namespace citycomplex {

namespace {
constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
// Kilometers per degree of latitude on the reference sphere.
const double kKmPerDegLat = kEarthRadiusKm * kDegToRad;
}  // namespace

double geodesic_km(LonLat a, LonLat b) {
    if (a.lon == b.lon && a.lat == b.lat) return 0.0;
    double lat1 = a.lat * kDegToRad;
    double lat2 = b.lat * kDegToRad;
    double dlat = (b.lat - a.lat) * kDegToRad;
    double dlon = (b.lon - a.lon) * kDegToRad;
    double s1 = std::sin(dlat / 2.0);
    double s2 = std::sin(dlon / 2.0);
    double h = s1 * s1 + std::cos(lat1) * std::cos(lat2) * s2 * s2;
    h = std::min(1.0, h);
    return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

PlanarXY tangent_plane_km(LonLat origin, LonLat p) {
    double x = (p.lon - origin.lon) * kKmPerDegLat * std::cos(origin.lat * kDegToRad);
    double y = (p.lat - origin.lat) * kKmPerDegLat;
    return {x, y};
}

namespace {
double cross(const PlanarXY& o, const PlanarXY& a, const PlanarXY& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}
}  // namespace

std::vector<std::size_t> convex_hull_indices(const std::vector<PlanarXY>& points) {
    std::size_t n = points.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (points[i].x != points[j].x) return points[i].x < points[j].x;
        return points[i].y < points[j].y;
    });
    if (n < 3) return order;

    std::vector<std::size_t> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t ii = 0; ii < n; ++ii) {
        std::size_t i = order[ii];
        while (k >= 2 && cross(points[hull[k - 2]], points[hull[k - 1]], points[i]) <= 0) --k;
        hull[k++] = i;
    }
    std::size_t lower = k + 1;
    for (std::size_t ii = n; ii-- > 0;) {
        std::size_t i = order[ii];
        while (k >= lower && cross(points[hull[k - 2]], points[hull[k - 1]], points[i]) <= 0)
            --k;
        hull[k++] = i;
    }
    hull.resize(k > 1 ? k - 1 : k);
    return hull;
}

double convex_hull_area(const std::vector<PlanarXY>& points) {
    auto hull = convex_hull_indices(points);
    if (hull.size() < 3) return 0.0;
    double twice_area = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const PlanarXY& a = points[hull[i]];
        const PlanarXY& b = points[hull[(i + 1) % hull.size()]];
        twice_area += a.x * b.y - b.x * a.y;
    }
    return std::abs(twice_area) / 2.0;
}

GridIndex::GridIndex(const std::vector<StorePoint>& stores, double cell_km) {
    if (stores.empty()) throw SpatialError("EmptyInput", "grid index over empty store set");
    if (cell_km <= 0.0) throw SpatialError("BadCellSize", "cell_km must be positive");
    cell_km_ = cell_km;

    points_.reserve(stores.size());
    double lon_min = stores[0].lon, lon_max = stores[0].lon;
    double lat_min = stores[0].lat, lat_max = stores[0].lat;
    for (const auto& s : stores) {
        points_.push_back({s.lon, s.lat});
        lon_min = std::min(lon_min, s.lon);
        lon_max = std::max(lon_max, s.lon);
        lat_min = std::min(lat_min, s.lat);
        lat_max = std::max(lat_max, s.lat);
    }

    lon0_ = lon_min;
    lat0_ = lat_min;
    dlat_ = cell_km / kKmPerDegLat;
    // Longitude degrees shrink with latitude; size by the worst case in the box.
    double max_abs_lat = std::max(std::abs(lat_min), std::abs(lat_max));
    double cos_lat = std::max(0.01, std::cos(max_abs_lat * kDegToRad));
    dlon_ = cell_km / (kKmPerDegLat * cos_lat);

    nx_ = static_cast<std::size_t>((lon_max - lon_min) / dlon_) + 1;
    ny_ = static_cast<std::size_t>((lat_max - lat_min) / dlat_) + 1;
    cells_.resize(nx_ * ny_);
    for (std::size_t i = 0; i < points_.size(); ++i) {
        cells_[cell_of(points_[i].lon, points_[i].lat)].members.push_back(i);
    }
}

std::size_t GridIndex::cell_of(double lon, double lat) const {
    auto clamp_idx = [](double v, std::size_t n) {
        if (v < 0.0) return std::size_t{0};
        std::size_t i = static_cast<std::size_t>(v);
        return i >= n ? n - 1 : i;
    };
    std::size_t ix = clamp_idx((lon - lon0_) / dlon_, nx_);
    std::size_t iy = clamp_idx((lat - lat0_) / dlat_, ny_);
    return iy * nx_ + ix;
}

std::vector<std::size_t> GridIndex::query(LonLat center, double radius_km) const {
    std::vector<std::size_t> result;
    if (radius_km < 0.0) return result;

    // Window of cells that covers the radius, in whole cells.
    long long span_x = static_cast<long long>(radius_km / cell_km_) + 1;
    long long span_y = span_x;
    long long cx = static_cast<long long>((center.lon - lon0_) / dlon_);
    long long cy = static_cast<long long>((center.lat - lat0_) / dlat_);

    long long x_lo = std::max<long long>(0, cx - span_x);
    long long x_hi = std::min<long long>(static_cast<long long>(nx_) - 1, cx + span_x);
    long long y_lo = std::max<long long>(0, cy - span_y);
    long long y_hi = std::min<long long>(static_cast<long long>(ny_) - 1, cy + span_y);

    for (long long y = y_lo; y <= y_hi; ++y) {
        for (long long x = x_lo; x <= x_hi; ++x) {
            const Cell& cell = cells_[static_cast<std::size_t>(y) * nx_ +
                                      static_cast<std::size_t>(x)];
            for (std::size_t idx : cell.members) {
                if (geodesic_km(center, points_[idx]) <= radius_km) result.push_back(idx);
            }
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

}  // namespace citycomplex
