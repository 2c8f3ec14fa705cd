#include "citycomplex/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>

#include <json.hpp>

#include "citycomplex/errors.hpp"

namespace citycomplex {

void ClusterParams::validate() const {
    if (nms_radius_km <= 0.0) throw ClusterError("BadParams", "nms_radius_km must be positive");
    if (r_step_km <= 0.0 || r_step_km > r_max_km) {
        throw ClusterError("BadParams", "need 0 < r_step_km <= r_max_km");
    }
}

std::vector<long long> find_peaks(const AmenityField& field,
                                  const std::vector<StorePoint>& stores,
                                  const GridIndex& index, const ClusterParams& params) {
    params.validate();
    std::vector<long long> peaks;
    for (std::size_t i = 0; i < stores.size(); ++i) {
        double a_i = field.at(stores[i].store_id);
        auto nearby = index.query(LonLat{stores[i].lon, stores[i].lat}, params.nms_radius_km);
        bool dominated = false;
        for (std::size_t j : nearby) {
            if (j == i) continue;
            double a_j = field.at(stores[j].store_id);
            if (a_j > a_i ||
                (a_j == a_i && stores[j].store_id < stores[i].store_id)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) peaks.push_back(stores[i].store_id);
    }
    std::sort(peaks.begin(), peaks.end(), [&](long long a, long long b) {
        double aa = field.at(a), ab = field.at(b);
        if (aa != ab) return aa > ab;
        return a < b;
    });
    return peaks;
}

namespace {

std::unordered_map<long long, std::size_t> index_by_id(const std::vector<StorePoint>& stores) {
    std::unordered_map<long long, std::size_t> map;
    map.reserve(stores.size());
    for (std::size_t i = 0; i < stores.size(); ++i) map[stores[i].store_id] = i;
    return map;
}

}  // namespace

std::vector<Cluster> grow_clusters(const std::vector<long long>& seeds,
                                   const std::vector<StorePoint>& stores,
                                   const AmenityField& field, const ClusterParams& params) {
    params.validate();
    if (seeds.empty()) throw ClusterError("NoSeeds", "no peaks to grow clusters from");

    auto by_id = index_by_id(stores);
    std::vector<StorePoint> seed_points;
    seed_points.reserve(seeds.size());
    for (long long id : seeds) seed_points.push_back(stores[by_id.at(id)]);
    GridIndex seed_index(seed_points, params.r_max_km);

    constexpr double kTieTolKm = 1e-9;

    // The radius loop assigns each store at the first step reaching its
    // nearest seed, so assignment reduces to: nearest seed within r_max.
    std::vector<long long> assignment(stores.size(), -1);
    for (std::size_t i = 0; i < stores.size(); ++i) {
        LonLat here{stores[i].lon, stores[i].lat};
        auto candidates = seed_index.query(here, params.r_max_km);
        long long best = -1;
        double best_d = 0.0;
        for (std::size_t s : candidates) {
            double d = geodesic_km(here, LonLat{seed_points[s].lon, seed_points[s].lat});
            if (best < 0 || d < best_d - kTieTolKm) {
                best = static_cast<long long>(s);
                best_d = d;
            } else if (std::abs(d - best_d) <= kTieTolKm) {
                double a_new = field.at(seeds[s]);
                double a_best = field.at(seeds[static_cast<std::size_t>(best)]);
                if (a_new > a_best ||
                    (a_new == a_best && seeds[s] < seeds[static_cast<std::size_t>(best)])) {
                    best = static_cast<long long>(s);
                    best_d = d;
                }
            }
        }
        assignment[i] = best;
    }
    // Seeds always belong to their own cluster.
    for (std::size_t s = 0; s < seeds.size(); ++s) {
        assignment[by_id.at(seeds[s])] = static_cast<long long>(s);
    }

    std::vector<Cluster> clusters(seeds.size());
    for (std::size_t s = 0; s < seeds.size(); ++s) {
        clusters[s].cluster_id = static_cast<long long>(s) + 1;
        clusters[s].seed_store_id = seeds[s];
        clusters[s].seed_position = {seed_points[s].lon, seed_points[s].lat};
        clusters[s].seed_amenity = field.at(seeds[s]);
        clusters[s].year = stores[by_id.at(seeds[s])].year;
    }
    for (std::size_t i = 0; i < stores.size(); ++i) {
        if (assignment[i] >= 0) {
            clusters[static_cast<std::size_t>(assignment[i])].member_ids.push_back(
                stores[i].store_id);
        }
    }
    for (auto& c : clusters) {
        std::sort(c.member_ids.begin(), c.member_ids.end());
        cluster_geometry(c, stores);
    }
    return clusters;
}

void cluster_geometry(Cluster& cluster, const std::vector<StorePoint>& stores) {
    auto by_id = index_by_id(stores);
    if (cluster.member_ids.empty()) {
        throw ClusterError("EmptyCluster",
                           "cluster " + std::to_string(cluster.cluster_id) + " has no members");
    }

    double lon_sum = 0.0, lat_sum = 0.0;
    for (long long id : cluster.member_ids) {
        const StorePoint& s = stores[by_id.at(id)];
        lon_sum += s.lon;
        lat_sum += s.lat;
    }
    double n = static_cast<double>(cluster.member_ids.size());
    cluster.centroid = {lon_sum / n, lat_sum / n};

    const StorePoint& seed = stores[by_id.at(cluster.seed_store_id)];
    LonLat seed_pos{seed.lon, seed.lat};
    double radius = 0.0;
    std::vector<PlanarXY> planar;
    planar.reserve(cluster.member_ids.size());
    for (long long id : cluster.member_ids) {
        const StorePoint& s = stores[by_id.at(id)];
        radius = std::max(radius, geodesic_km(seed_pos, LonLat{s.lon, s.lat}));
        planar.push_back(tangent_plane_km(cluster.centroid, LonLat{s.lon, s.lat}));
    }
    cluster.assignment_radius_km = radius;
    cluster.hull_area_km2 = convex_hull_area(planar);
}

void attach_attributes(std::vector<Cluster>& clusters,
                       const std::vector<ClusterAttribute>& attrs,
                       const std::vector<StationSite>& stations,
                       const std::vector<StorePoint>& stores,
                       std::vector<std::string>* warnings) {
    auto by_id = index_by_id(stores);
    std::unordered_map<long long, Cluster*> cluster_map;
    for (auto& c : clusters) cluster_map[c.cluster_id] = &c;

    for (auto& c : clusters) {
        const StorePoint& seed = stores[by_id.at(c.seed_store_id)];
        LonLat seed_pos{seed.lon, seed.lat};
        c.near_metro = false;
        for (const auto& st : stations) {
            if (geodesic_km(seed_pos, st.position) <= c.assignment_radius_km) {
                c.near_metro = true;
                break;
            }
        }
    }

    for (const auto& a : attrs) {
        auto it = cluster_map.find(a.cluster_id);
        if (it == cluster_map.end()) {
            throw ClusterError("UnknownClusterId",
                               "attribute row names cluster " + std::to_string(a.cluster_id));
        }
        Cluster& c = *it->second;
        double hull_m2 = c.hull_area_km2 * 1e6;
        double share;
        if (hull_m2 <= 0.0) {
            share = a.green_area_m2 > 0.0 ? 1.0 : 0.0;
        } else {
            share = a.green_area_m2 / hull_m2;
        }
        if (share > 1.0 && warnings) {
            warnings->push_back("cluster " + std::to_string(a.cluster_id) +
                                ": green share " + std::to_string(share) + " clamped to 1");
        }
        c.green_share = std::clamp(share, 0.0, 1.0);
    }
}

std::vector<Cluster> detect_clusters(const std::vector<StorePoint>& stores,
                                     const AmenityField& field, const GridIndex& index,
                                     const ClusterParams& params) {
    auto seeds = find_peaks(field, stores, index, params);
    return grow_clusters(seeds, stores, field, params);
}

std::vector<std::optional<long long>> membership_of(const std::vector<Cluster>& clusters,
                                                    const std::vector<StorePoint>& stores) {
    std::unordered_map<long long, long long> member_to_cluster;
    for (const auto& c : clusters) {
        for (long long id : c.member_ids) member_to_cluster[id] = c.cluster_id;
    }
    std::vector<std::optional<long long>> result;
    result.reserve(stores.size());
    for (const auto& s : stores) {
        auto it = member_to_cluster.find(s.store_id);
        result.push_back(it == member_to_cluster.end() ? std::nullopt
                                                       : std::optional<long long>(it->second));
    }
    return result;
}

void write_clusters_geojson(const std::string& path, const std::vector<Cluster>& clusters,
                            const std::vector<StorePoint>& stores) {
    auto by_id = index_by_id(stores);
    nlohmann::ordered_json features = nlohmann::ordered_json::array();
    for (const auto& c : clusters) {
        std::vector<PlanarXY> planar;
        std::vector<LonLat> coords;
        planar.reserve(c.member_ids.size());
        for (long long id : c.member_ids) {
            const StorePoint& s = stores[by_id.at(id)];
            coords.push_back({s.lon, s.lat});
            planar.push_back(tangent_plane_km(c.centroid, LonLat{s.lon, s.lat}));
        }
        auto hull = convex_hull_indices(planar);

        nlohmann::ordered_json ring = nlohmann::ordered_json::array();
        for (std::size_t idx : hull) ring.push_back({coords[idx].lon, coords[idx].lat});
        if (!hull.empty()) ring.push_back({coords[hull[0]].lon, coords[hull[0]].lat});

        nlohmann::ordered_json feature;
        feature["type"] = "Feature";
        feature["geometry"] = {{"type", "Polygon"},
                               {"coordinates", nlohmann::ordered_json::array({ring})}};
        feature["properties"] = {{"cluster_id", c.cluster_id},
                                 {"year", c.year},
                                 {"n_stores", c.member_ids.size()},
                                 {"A_seed", c.seed_amenity},
                                 {"hull_area_km2", c.hull_area_km2},
                                 {"radius_km", c.assignment_radius_km},
                                 {"near_metro", c.near_metro ? 1 : 0},
                                 {"green_share", c.green_share},
                                 {"seed_store_id", c.seed_store_id},
                                 {"seed_lon", c.seed_position.lon},
                                 {"seed_lat", c.seed_position.lat},
                                 {"centroid_lon", c.centroid.lon},
                                 {"centroid_lat", c.centroid.lat}};
        features.push_back(std::move(feature));
    }
    nlohmann::ordered_json fc;
    fc["type"] = "FeatureCollection";
    fc["features"] = std::move(features);

    std::ofstream out(path);
    if (!out) throw ClusterError("FileNotWritable", "cannot write " + path);
    out << fc.dump(2) << '\n';
}

void write_members_csv(const std::string& path, const std::vector<Cluster>& clusters,
                       const std::vector<StorePoint>& stores) {
    auto membership = membership_of(clusters, stores);
    std::ofstream out(path);
    if (!out) throw ClusterError("FileNotWritable", "cannot write " + path);
    out << "store_id,cluster_id\n";
    for (std::size_t i = 0; i < stores.size(); ++i) {
        out << stores[i].store_id << ',';
        if (membership[i]) out << *membership[i];
        out << '\n';
    }
}

}  // namespace citycomplex
