#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "citycomplex/econ.hpp"
#include "citycomplex/rng.hpp"

namespace citycomplex {

/// Planted outcome coefficients for the yearly panel model, defaults taken
/// from the calibration targets (signs and rough magnitudes).
struct DgpBeta {
    double intercept = 8288.917;
    double temperature = -239.309;
    double high_year = 478.863;
    double rain = -0.676;
    double covid_period = -441.472;
    double complexity = 24.753;
    double high_year_x_complexity = 13.645;
    double diversity = -12.343;
    double total_shops = 0.456;
    // Calibrated so the planted yearly panel lands near the target
    // adjusted R^2 of 0.637 at the 230-cluster scale.
    double noise_sd = 320.0;
};

struct SynthConfig {
    std::uint64_t seed = 1;
    int n_centers = 500;
    double stores_per_center = 100.0;  // Poisson mean
    double center_spread_km = 0.12;    // within-center Gaussian sigma
    double min_separation_km = 0.5;    // between planted centers

    double bbox_lon_min = 126.80;
    double bbox_lon_max = 127.15;
    double bbox_lat_min = 37.43;
    double bbox_lat_max = 37.70;

    // Category mix: centers draw from a rarity-ranked catalog with a
    // per-center geometric concentration; "complex" centers (low lambda)
    // reach rarer categories.
    double concentration_min = 0.03;
    double concentration_max = 0.35;

    int base_year = 2016;
    std::vector<int> years = {2016, 2017, 2018, 2019, 2020, 2021};

    DgpBeta dgp;
};

/// Fixed per-year August weather defaults; 2018 carries the heat-wave
/// values (mean high 33.3, max 39.6).
std::vector<WeatherRecord> default_weather_table(const std::vector<int>& years);

struct SynthCity {
    std::vector<StorePoint> stores;
    std::vector<int> truth_center;  // planted center id per store
    std::vector<LonLat> centers;
    std::vector<double> center_complexity;  // planted latent level in [0,1]
};

/// Places centers uniformly with minimum separation, scatters Gaussian
/// stores around each, and assigns categories by per-center concentration.
/// Deterministic for a given seed. Throws BBoxTooSmall when the box cannot
/// hold n_centers at the required separation.
SynthCity gen_city(const SynthConfig& config);

/// The 9x6 category catalog, rarity-ranked.
const std::vector<std::string>& synth_category_catalog();

/// Per-cluster inputs for the mobility generator.
struct ClusterDgpInput {
    long long cluster_id = 0;
    LonLat station_position;  // a station placed at the cluster seed
    double complexity = 0.0;  // rescaled [0, 100]
    int diversity = 0;
    double total_shops = 0.0;
};

struct MobilityGenResult {
    std::vector<MobilityCount> mobility;
    int clamped_rows = 0;  // negative draws clamped at 0
};

/// Draws the planted linear outcome per cluster-year and emits one station
/// observation per cluster per August. Weather regressors come from the
/// table; noise is Normal(0, dgp.noise_sd).
MobilityGenResult gen_mobility(const SynthConfig& config,
                               const std::vector<ClusterDgpInput>& clusters,
                               const std::vector<WeatherRecord>& weather);

/// Synthetic cluster-year panel drawn directly from the planted process
/// (cross-section distributions shaped like the calibration bands). Used
/// for estimator-recovery checks without the geometry stages.
std::vector<PanelRow> gen_synthetic_panel(const SynthConfig& config, int n_clusters);

void write_ground_truth(const std::string& path, const SynthCity& city);

}  // namespace citycomplex
