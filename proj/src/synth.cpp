#include "citycomplex/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "citycomplex/errors.hpp"
#include "citycomplex/stats.hpp"

namespace citycomplex {

std::vector<WeatherRecord> default_weather_table(const std::vector<int>& years) {
    // August values; 2018 is the heat-wave year, the pandemic years are
    // cool and wet so the dummy correlations keep their expected signs.
    static const std::map<int, WeatherRecord> table = {
        {2016, {2016, 8, 32.0, 36.2, 200.5}}, {2017, {2017, 8, 30.9, 34.6, 297.0}},
        {2018, {2018, 8, 33.3, 39.6, 120.0}}, {2019, {2019, 8, 31.2, 35.4, 190.0}},
        {2020, {2020, 8, 29.3, 33.1, 675.7}}, {2021, {2021, 8, 30.1, 34.0, 360.0}},
    };
    std::vector<WeatherRecord> out;
    for (int year : years) {
        auto it = table.find(year);
        if (it != table.end()) {
            out.push_back(it->second);
        } else {
            out.push_back({year, 8, 31.0, 35.0, 250.0});
        }
    }
    return out;
}

const std::vector<std::string>& synth_category_catalog() {
    static const std::vector<std::string> catalog = [] {
        const char* groups[] = {"restaurants", "retail",       "education",
                                "health",      "leisure",      "accommodation",
                                "sports",      "real_estate",  "services"};
        std::vector<std::string> cats;
        // Interleave groups so rarity rank cuts across all nine of them.
        for (int sub = 1; sub <= 6; ++sub) {
            for (const char* g : groups) {
                cats.push_back(std::string(g) + "/s" + std::to_string(sub));
            }
        }
        return cats;
    }();
    return catalog;
}

namespace {

constexpr double kKmPerDegLat = 6371.0088 * 3.14159265358979323846 / 180.0;

}  // namespace

SynthCity gen_city(const SynthConfig& config) {
    if (config.n_centers <= 0 || config.stores_per_center <= 0.0 ||
        config.center_spread_km <= 0.0) {
        throw SynthError("BadConfig", "counts and spreads must be positive");
    }
    CounterRng rng(config.seed);
    SynthCity city;

    const int max_attempts = 2000 * config.n_centers;
    int attempts = 0;
    while (static_cast<int>(city.centers.size()) < config.n_centers) {
        if (++attempts > max_attempts) {
            throw SynthError("BBoxTooSmall",
                             "cannot place " + std::to_string(config.n_centers) +
                                 " centers at separation " +
                                 std::to_string(config.min_separation_km) + " km");
        }
        LonLat candidate{rng.uniform(config.bbox_lon_min, config.bbox_lon_max),
                         rng.uniform(config.bbox_lat_min, config.bbox_lat_max)};
        bool ok = true;
        for (const auto& c : city.centers) {
            if (geodesic_km(candidate, c) < config.min_separation_km) {
                ok = false;
                break;
            }
        }
        if (ok) city.centers.push_back(candidate);
    }

    const auto& catalog = synth_category_catalog();
    double mid_lat = (config.bbox_lat_min + config.bbox_lat_max) / 2.0;
    double km_per_deg_lon = kKmPerDegLat * std::cos(mid_lat * 3.14159265358979323846 / 180.0);

    long long next_id = 1;
    for (int c = 0; c < config.n_centers; ++c) {
        double latent = rng.uniform();
        city.center_complexity.push_back(latent);
        // Low lambda = flat category mix reaching rare categories.
        double lambda = config.concentration_max -
                        latent * (config.concentration_max - config.concentration_min);
        std::vector<double> cdf(catalog.size());
        double acc = 0.0;
        for (std::size_t k = 0; k < catalog.size(); ++k) {
            acc += std::exp(-lambda * static_cast<double>(k));
            cdf[k] = acc;
        }

        int n_stores = std::max(1, rng.poisson(config.stores_per_center));
        for (int s = 0; s < n_stores; ++s) {
            double dx = rng.normal(0.0, config.center_spread_km);
            double dy = rng.normal(0.0, config.center_spread_km);
            StorePoint p;
            p.store_id = next_id++;
            p.lon = city.centers[static_cast<std::size_t>(c)].lon + dx / km_per_deg_lon;
            p.lat = city.centers[static_cast<std::size_t>(c)].lat + dy / kKmPerDegLat;
            double u = rng.uniform() * acc;
            std::size_t k = static_cast<std::size_t>(
                std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
            if (k >= catalog.size()) k = catalog.size() - 1;
            p.category = catalog[k];
            p.year = config.base_year;
            city.stores.push_back(std::move(p));
            city.truth_center.push_back(c);
        }
    }
    return city;
}

MobilityGenResult gen_mobility(const SynthConfig& config,
                               const std::vector<ClusterDgpInput>& clusters,
                               const std::vector<WeatherRecord>& weather) {
    std::map<int, const WeatherRecord*> by_year;
    for (const auto& w : weather) {
        if (w.month == 8) by_year[w.year] = &w;
    }

    // Distinct stream from gen_city so regenerating mobility does not
    // depend on how many draws the city consumed.
    CounterRng rng(config.seed ^ 0xA5A5A5A5DEADBEEFULL);
    const DgpBeta& b = config.dgp;

    MobilityGenResult result;
    for (const auto& cl : clusters) {
        for (int year : config.years) {
            auto it = by_year.find(year);
            if (it == by_year.end()) {
                throw SynthError("MissingWeather", "no August weather for " +
                                                       std::to_string(year));
            }
            const WeatherRecord& w = *it->second;
            double high_year = (year == 2018) ? 1.0 : 0.0;
            double covid = (year == 2020 || year == 2021) ? 1.0 : 0.0;
            double y = b.intercept + b.temperature * w.mean_high_temp_c +
                       b.high_year * high_year + b.rain * w.precip_mm +
                       b.covid_period * covid + b.complexity * cl.complexity +
                       b.high_year_x_complexity * high_year * cl.complexity +
                       b.diversity * static_cast<double>(cl.diversity) +
                       b.total_shops * cl.total_shops;
            if (b.noise_sd > 0.0) y += rng.normal(0.0, b.noise_sd);
            if (y < 0.0) {
                y = 0.0;
                ++result.clamped_rows;
            }
            MobilityCount m;
            m.source_id = "station_" + std::to_string(cl.cluster_id);
            m.lon = cl.station_position.lon;
            m.lat = cl.station_position.lat;
            m.year = year;
            m.month = 8;
            m.timeslot = "07-24";
            m.demographic = "total";
            m.count = y * 1000.0;  // panel Y is in thousands
            result.mobility.push_back(std::move(m));
        }
    }
    return result;
}

std::vector<PanelRow> gen_synthetic_panel(const SynthConfig& config, int n_clusters) {
    CounterRng rng(config.seed ^ 0x5117BEE5C0FFEE00ULL);
    auto weather = default_weather_table(config.years);
    std::map<int, const WeatherRecord*> by_year;
    for (const auto& w : weather) by_year[w.year] = &w;

    struct Cross {
        double complexity, total_shops, green;
        int diversity, near_metro;
    };
    std::vector<Cross> cross;
    for (int j = 0; j < n_clusters; ++j) {
        Cross x;
        x.complexity = std::clamp(rng.normal(20.0, 11.1), 3.0, 78.2);
        x.diversity = static_cast<int>(std::lround(std::clamp(rng.normal(31.6, 6.4), 8.0, 50.0)));
        x.total_shops = std::clamp(rng.normal(854.0, 463.0), 54.0, 3127.0);
        x.green = rng.uniform();
        x.near_metro = rng.uniform() < 0.5 ? 1 : 0;
        cross.push_back(x);
    }

    std::vector<double> cx_values, div_values, green_values;
    for (const auto& x : cross) {
        cx_values.push_back(x.complexity);
        div_values.push_back(static_cast<double>(x.diversity));
        green_values.push_back(x.green);
    }
    double cx_hi = stats::quantile_nearest_rank(cx_values, 0.80);
    double div_lo = stats::quantile_nearest_rank(div_values, 0.20);
    double green_hi = stats::quantile_nearest_rank(green_values, 0.80);

    const DgpBeta& b = config.dgp;
    std::vector<PanelRow> panel;
    for (int j = 0; j < n_clusters; ++j) {
        for (int year : config.years) {
            const WeatherRecord& w = *by_year.at(year);
            PanelRow row;
            row.cluster_id = j + 1;
            row.year = year;
            row.month = 8;
            row.temperature = w.mean_high_temp_c;
            row.rain = w.precip_mm;
            row.high_year = year == 2018 ? 1 : 0;
            row.high_temp = row.high_year;
            row.covid_period = (year == 2020 || year == 2021) ? 1 : 0;
            const Cross& x = cross[static_cast<std::size_t>(j)];
            row.complexity = x.complexity;
            row.diversity = x.diversity;
            row.total_shops = x.total_shops;
            row.high_complexity = x.complexity >= cx_hi ? 1 : 0;
            row.low_diversity = static_cast<double>(x.diversity) <= div_lo ? 1 : 0;
            row.high_green = x.green >= green_hi ? 1 : 0;
            row.near_metro = x.near_metro;
            double y = b.intercept + b.temperature * row.temperature +
                       b.high_year * row.high_year + b.rain * row.rain +
                       b.covid_period * row.covid_period + b.complexity * row.complexity +
                       b.high_year_x_complexity * row.high_year * row.complexity +
                       b.diversity * row.diversity + b.total_shops * row.total_shops;
            if (b.noise_sd > 0.0) y += rng.normal(0.0, b.noise_sd);
            // No floor here: this panel feeds estimator-recovery checks,
            // where censoring would bias the planted coefficients.
            row.y = y;
            panel.push_back(row);
        }
    }
    return panel;
}

void write_ground_truth(const std::string& path, const SynthCity& city) {
    std::ofstream out(path);
    if (!out) throw SynthError("FileNotWritable", "cannot write " + path);
    out << "store_id,center_id\n";
    for (std::size_t i = 0; i < city.stores.size(); ++i) {
        out << city.stores[i].store_id << ',' << city.truth_center[i] << '\n';
    }
}

}  // namespace citycomplex
