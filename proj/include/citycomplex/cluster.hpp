#pragma once

#include <optional>
#include <string>
#include <vector>

#include "citycomplex/amenity.hpp"

namespace citycomplex {

struct ClusterParams {
    double nms_radius_km = 0.25;  // peak suppression neighborhood
    double r_max_km = 0.70;       // maximum assignment radius
    double r_step_km = 0.05;      // greedy expansion step

    void validate() const;
};

struct Cluster {
    long long cluster_id = 0;
    long long seed_store_id = 0;
    LonLat seed_position;
    std::vector<long long> member_ids;  // includes the seed
    LonLat centroid;
    double assignment_radius_km = 0.0;  // max seed->member distance
    double hull_area_km2 = 0.0;
    int year = 0;

    double seed_amenity = 0.0;
    bool near_metro = false;
    double green_share = 0.0;
};

/// Local peaks of the amenity field: store i is a peak iff no store within
/// nms_radius_km has a strictly larger A, or an equal A with a lower
/// store_id. Returns seed store_ids sorted by A descending (ties by id).
std::vector<long long> find_peaks(const AmenityField& field,
                                  const std::vector<StorePoint>& stores,
                                  const GridIndex& index, const ClusterParams& params);

/// Expands cluster radii in r_step increments up to r_max, assigning each
/// still-unassigned store to the nearest reachable seed. Equidistant ties
/// (within 1e-9 km) go to the seed with higher A, then lower seed id.
/// Stores farther than r_max from every seed stay unassigned.
std::vector<Cluster> grow_clusters(const std::vector<long long>& seeds,
                                   const std::vector<StorePoint>& stores,
                                   const AmenityField& field, const ClusterParams& params);

/// Recomputes centroid, assignment radius, and tangent-plane hull area.
void cluster_geometry(Cluster& cluster, const std::vector<StorePoint>& stores);

/// A station location used for the metro flag.
struct StationSite {
    std::string source_id;
    LonLat position;
};

/// Sets near_metro (a station within assignment_radius_km of the seed) and
/// green_share (green_area_m2 over hull area, clamped to [0,1]). Attribute
/// rows naming unknown cluster ids raise ClusterError("UnknownClusterId").
void attach_attributes(std::vector<Cluster>& clusters,
                       const std::vector<ClusterAttribute>& attrs,
                       const std::vector<StationSite>& stations,
                       const std::vector<StorePoint>& stores,
                       std::vector<std::string>* warnings = nullptr);

/// find_peaks + grow_clusters + geometry in one call.
std::vector<Cluster> detect_clusters(const std::vector<StorePoint>& stores,
                                     const AmenityField& field, const GridIndex& index,
                                     const ClusterParams& params);

/// Cluster id for each store, empty when unassigned; order matches `stores`.
std::vector<std::optional<long long>> membership_of(const std::vector<Cluster>& clusters,
                                                    const std::vector<StorePoint>& stores);

/// clusters.geojson: one Feature per cluster, hull polygon geometry,
/// properties {cluster_id, year, n_stores, A_seed, hull_area_km2, radius_km,
/// near_metro, green_share}.
void write_clusters_geojson(const std::string& path, const std::vector<Cluster>& clusters,
                            const std::vector<StorePoint>& stores);

/// members.csv (store_id, cluster_id); unassigned stores keep an empty
/// cluster_id field.
void write_members_csv(const std::string& path, const std::vector<Cluster>& clusters,
                       const std::vector<StorePoint>& stores);

}  // namespace citycomplex
