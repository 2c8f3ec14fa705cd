#pragma once

#include <map>

#include "citycomplex/geo.hpp"

namespace citycomplex {

/// Exponential distance-decay kernel parameters. With the default gamma the
/// pairwise contribution halves every ln(2)/gamma = 0.09144 km and is below
/// 5.1e-4 at the 1 km cutoff.
struct DecayParams {
    double gamma = 7.58;     // per kilometer
    double cutoff_km = 1.0;  // hard truncation radius
    bool include_self = true;

    void validate() const;
};

/// exp(-gamma * d).
double decay_kernel(double gamma, double distance_km);

/// Effective amenity count per store.
struct AmenityField {
    std::map<long long, double> values;  // store_id -> A_i
    DecayParams params;

    double at(long long store_id) const;
};

/// Computes A_i = sum over stores j with d_ij <= cutoff of exp(-gamma d_ij),
/// self term included when include_self. Contributions are accumulated in
/// store_id-ascending order so the result is bit-identical for any thread
/// count. The index must be built over exactly `stores`.
AmenityField amenity_field(const std::vector<StorePoint>& stores, const DecayParams& params,
                           const GridIndex& index, int threads = 1);

/// Writes amenity_field.csv (store_id, A).
void write_amenity_field(const std::string& path, const AmenityField& field);

}  // namespace citycomplex
