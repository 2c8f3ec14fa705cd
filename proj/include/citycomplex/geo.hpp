#pragma once

#include <cstddef>
#include <vector>

#include "citycomplex/core.hpp"

namespace citycomplex {

inline constexpr double kEarthRadiusKm = 6371.0088;

struct LonLat {
    double lon = 0.0;
    double lat = 0.0;
};

/// Haversine distance on a sphere of radius kEarthRadiusKm.
double geodesic_km(LonLat a, LonLat b);

/// Planar offset (x east, y north, km) of p in the tangent plane at origin.
/// Valid for the sub-kilometer spans the hull geometry works at.
struct PlanarXY {
    double x = 0.0;
    double y = 0.0;
};
PlanarXY tangent_plane_km(LonLat origin, LonLat p);

/// Convex hull area (km^2) of planar points, monotone-chain hull with the
/// shoelace formula. Fewer than 3 non-collinear points give 0.
double convex_hull_area(const std::vector<PlanarXY>& points);

/// Hull vertices in counter-clockwise order (indices into the input).
std::vector<std::size_t> convex_hull_indices(const std::vector<PlanarXY>& points);

/// Uniform lon/lat grid over a point set. Cells are sized so that one cell
/// spans at least cell_km in both axes at the bounding box's worst latitude;
/// radius queries scan the covering cell window and filter by exact
/// geodesic distance.
class GridIndex {
public:
    /// Throws SpatialError("EmptyInput") on an empty point set.
    GridIndex(const std::vector<StorePoint>& stores, double cell_km);

    /// Indices (into the construction store vector) of all stores within
    /// radius_km of the query point, sorted ascending. Exact: superset by
    /// cell, then haversine filter.
    std::vector<std::size_t> query(LonLat center, double radius_km) const;

    double cell_km() const { return cell_km_; }
    std::size_t size() const { return points_.size(); }

private:
    struct Cell {
        std::vector<std::size_t> members;
    };

    std::size_t cell_of(double lon, double lat) const;

    std::vector<LonLat> points_;
    double cell_km_ = 0.0;
    double lon0_ = 0.0, lat0_ = 0.0;
    double dlon_ = 0.0, dlat_ = 0.0;  // cell extents in degrees
    std::size_t nx_ = 0, ny_ = 0;
    std::vector<Cell> cells_;
};

}  // namespace citycomplex
