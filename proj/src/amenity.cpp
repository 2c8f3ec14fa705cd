#include "citycomplex/amenity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <thread>

#include "citycomplex/errors.hpp"

namespace citycomplex {

void DecayParams::validate() const {
    if (gamma <= 0.0) throw SpatialError("BadParams", "gamma must be positive");
    if (cutoff_km <= 0.0) throw SpatialError("BadParams", "cutoff_km must be positive");
}

double decay_kernel(double gamma, double distance_km) {
    return std::exp(-gamma * distance_km);
}

double AmenityField::at(long long store_id) const {
    auto it = values.find(store_id);
    if (it == values.end()) {
        throw SpatialError("UnknownStore", "store_id " + std::to_string(store_id) +
                                               " not in amenity field");
    }
    return it->second;
}

AmenityField amenity_field(const std::vector<StorePoint>& stores, const DecayParams& params,
                           const GridIndex& index, int threads) {
    params.validate();
    if (index.size() != stores.size()) {
        throw SpatialError("ParamsMismatch",
                           "index built over a different store set (size " +
                               std::to_string(index.size()) + " vs " +
                               std::to_string(stores.size()) + ")");
    }

    std::vector<double> out(stores.size(), 0.0);

    auto compute_range = [&](std::size_t begin, std::size_t end) {
        std::vector<std::pair<long long, double>> contributions;
        for (std::size_t i = begin; i < end; ++i) {
            LonLat here{stores[i].lon, stores[i].lat};
            auto nearby = index.query(here, params.cutoff_km);
            contributions.clear();
            contributions.reserve(nearby.size());
            for (std::size_t j : nearby) {
                if (j == i) continue;
                double d = geodesic_km(here, LonLat{stores[j].lon, stores[j].lat});
                contributions.emplace_back(stores[j].store_id,
                                           decay_kernel(params.gamma, d));
            }
            // Fixed summation order: ascending neighbor store_id.
            std::sort(contributions.begin(), contributions.end());
            double a = params.include_self ? 1.0 : 0.0;
            for (const auto& [id, k] : contributions) a += k;
            out[i] = a;
        }
    };

    std::size_t n = stores.size();
    std::size_t workers = threads > 1 ? std::min<std::size_t>(threads, n) : 1;
    if (workers <= 1) {
        compute_range(0, n);
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (n + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            std::size_t begin = w * chunk;
            std::size_t end = std::min(n, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(compute_range, begin, end);
        }
        for (auto& t : pool) t.join();
    }

    AmenityField field;
    field.params = params;
    for (std::size_t i = 0; i < n; ++i) field.values[stores[i].store_id] = out[i];
    return field;
}

void write_amenity_field(const std::string& path, const AmenityField& field) {
    std::ofstream out(path);
    if (!out) throw SpatialError("FileNotWritable", "cannot write " + path);
    out.precision(17);
    out << "store_id,A\n";
    for (const auto& [id, a] : field.values) out << id << ',' << a << '\n';
}

}  // namespace citycomplex
