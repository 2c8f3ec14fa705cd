#include <doctest.h>

#include <cmath>

#include "citycomplex/amenity.hpp"
#include "citycomplex/errors.hpp"
#include "citycomplex/rng.hpp"
#include "helpers.hpp"

using namespace citycomplex;
using testutil::store_at;

namespace {

AmenityField field_of(const std::vector<StorePoint>& stores, DecayParams params = {},
                      int threads = 1) {
    GridIndex index(stores, params.cutoff_km);
    return amenity_field(stores, params, index, threads);
}

}  // namespace

TEST_CASE("kernel: halves at 0.09144 km and is tiny at 0.8047 km") {
    CHECK(std::abs(decay_kernel(7.58, 0.09144) - 0.5) < 1e-4);
    CHECK(decay_kernel(7.58, 0.8047) <= 2.3e-3);
    CHECK(decay_kernel(7.58, 0.0) == 1.0);
}

TEST_CASE("kernel: adding the half-distance always halves the weight") {
    const double half_d = std::log(2.0) / 7.58;
    CounterRng rng(3);
    for (int i = 0; i < 500; ++i) {
        double d = rng.uniform(0.0, 5.0);
        double ratio = decay_kernel(7.58, d) / decay_kernel(7.58, d + half_d);
        CHECK(ratio == doctest::Approx(2.0).epsilon(1e-12));
    }
}

TEST_CASE("field: isolated store has exactly its self term") {
    auto field = field_of({store_at(1, 0, 0)});
    CHECK(field.at(1) == doctest::Approx(1.0).epsilon(1e-12));

    DecayParams no_self;
    no_self.include_self = false;
    auto empty_field = field_of({store_at(1, 0, 0)}, no_self);
    CHECK(empty_field.at(1) == 0.0);
}

TEST_CASE("field: two stores one half-distance apart score 1.5 each") {
    auto field = field_of({store_at(1, 0, 0), store_at(2, 91.44, 0)});
    CHECK(std::abs(field.at(1) - 1.5) < 1e-4);
    CHECK(std::abs(field.at(2) - 1.5) < 1e-4);
}

TEST_CASE("field: three collinear stores 100 m apart") {
    auto field = field_of({store_at(1, 0, 0), store_at(2, 100, 0), store_at(3, 200, 0)});
    // middle: 1 + 2 e^{-0.758}; ends: 1 + e^{-0.758} + e^{-1.516}
    CHECK(std::abs(field.at(2) - 1.9372) < 1e-3);
    CHECK(std::abs(field.at(1) - 1.6882) < 1e-3);
    CHECK(std::abs(field.at(3) - 1.6882) < 1e-3);
}

TEST_CASE("field: stores beyond the cutoff contribute nothing") {
    auto field = field_of({store_at(1, 0, 0), store_at(2, 1500, 0)});
    CHECK(field.at(1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("field: adding a store never lowers anyone else's score") {
    CounterRng rng(17);
    std::vector<StorePoint> stores;
    for (int i = 0; i < 120; ++i) {
        stores.push_back(store_at(i, rng.uniform(-800, 800), rng.uniform(-800, 800)));
    }
    auto before = field_of(stores);
    stores.push_back(store_at(999, rng.uniform(-800, 800), rng.uniform(-800, 800)));
    auto after = field_of(stores);
    for (int i = 0; i < 120; ++i) CHECK(after.at(i) >= before.at(i));
}

TEST_CASE("field: include_self=false shifts every score down by exactly one") {
    CounterRng rng(19);
    std::vector<StorePoint> stores;
    for (int i = 0; i < 80; ++i) {
        stores.push_back(store_at(i, rng.uniform(-400, 400), rng.uniform(-400, 400)));
    }
    DecayParams with_self, without_self;
    without_self.include_self = false;
    auto a = field_of(stores, with_self);
    auto b = field_of(stores, without_self);
    for (int i = 0; i < 80; ++i) {
        CHECK(a.at(i) - b.at(i) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("field: indexed evaluation equals the all-pairs oracle within the cutoff") {
    CounterRng rng(23);
    std::vector<StorePoint> stores;
    for (int i = 0; i < 400; ++i) {
        stores.push_back(store_at(i, rng.uniform(-1500, 1500), rng.uniform(-1500, 1500)));
    }
    auto truncated = field_of(stores);
    const double bound = (stores.size() - 1) * decay_kernel(7.58, 1.0);
    for (std::size_t i = 0; i < stores.size(); ++i) {
        double oracle = 0.0;  // all-pairs, same cutoff, no index
        double exact = 0.0;   // all-pairs, no cutoff
        for (std::size_t j = 0; j < stores.size(); ++j) {
            double d = geodesic_km({stores[i].lon, stores[i].lat},
                                   {stores[j].lon, stores[j].lat});
            double w = decay_kernel(7.58, d);
            if (d <= 1.0) oracle += w;
            exact += w;
        }
        CHECK(std::abs(oracle - truncated.at(stores[i].store_id)) < 1e-9);
        // Dropping the tail stays inside the documented analytic bound.
        CHECK(exact - truncated.at(stores[i].store_id) <= bound);
    }
}

TEST_CASE("field: bit-identical across thread counts") {
    CounterRng rng(29);
    std::vector<StorePoint> stores;
    for (int i = 0; i < 500; ++i) {
        stores.push_back(store_at(i, rng.uniform(-1200, 1200), rng.uniform(-1200, 1200)));
    }
    auto t1 = field_of(stores, {}, 1);
    auto t4 = field_of(stores, {}, 4);
    auto t8 = field_of(stores, {}, 8);
    for (const auto& [id, a] : t1.values) {
        CHECK(t4.at(id) == a);  // exact, not approximate
        CHECK(t8.at(id) == a);
    }
}

TEST_CASE("field: index built over a different store set is rejected") {
    std::vector<StorePoint> stores = {store_at(1, 0, 0), store_at(2, 50, 0)};
    std::vector<StorePoint> other = {store_at(1, 0, 0)};
    GridIndex index(other, 1.0);
    CHECK_THROWS_AS(amenity_field(stores, {}, index), SpatialError);
}

TEST_CASE("params: non-positive gamma or cutoff is invalid") {
    DecayParams bad;
    bad.gamma = 0.0;
    CHECK_THROWS_AS(bad.validate(), SpatialError);
    bad.gamma = 7.58;
    bad.cutoff_km = -1.0;
    CHECK_THROWS_AS(bad.validate(), SpatialError);
}
