#pragma once

#include <map>
#include <string>
#include <vector>

#include "citycomplex/complexity.hpp"
#include "citycomplex/econ.hpp"
#include "citycomplex/synth.hpp"

namespace citycomplex {

/// Flat key-value run configuration. Unknown keys are rejected so typos
/// surface instead of silently using defaults.
struct RunConfig {
    std::string stores_path = "stores.csv";
    std::string weather_path = "weather.csv";
    std::string mobility_path = "mobility.csv";
    std::string attributes_path;  // optional
    std::string output_dir = "out";

    double gamma = 7.58;
    double cutoff_km = 1.0;
    bool include_self = true;
    double cell_km = 0.0;  // 0 = use cutoff_km

    double nms_radius_km = 0.25;
    double r_max_km = 0.70;
    double r_step_km = 0.05;

    std::string binarization = "rca";  // or "presence"
    double rca_threshold = 1.0;
    std::string category_depth = "subcategory";  // or "primary"
    std::string rescale_basis = "per-year";      // or "pooled"

    std::string se_type = "HC1";
    double quantile_cut = 0.20;
    int base_year = 2016;
    std::vector<int> years = {2016, 2017, 2018, 2019, 2020, 2021};
    std::vector<int> months = {8};
    std::string timeslot = "07-24";
    std::string demographic = "total";
    int threads = 1;

    // Synthetic-city keys, consumed by the synth subcommand.
    SynthConfig synth;

    void set(const std::string& key, const std::string& value);
    std::map<std::string, std::string> echo() const;
};

RunConfig load_config(const std::string& path);

/// FNV-1a 64 over file bytes, hex string. Used for manifest input digests.
std::string file_checksum(const std::string& path);

struct StageTiming {
    std::string stage;
    double milliseconds = 0.0;
};

struct RunOutcome {
    bool ok = false;
    std::string failed_stage;
    std::string error;
    std::vector<StageTiming> timings;
    std::vector<std::string> warnings;
};

/// Full pipeline: ingest -> field -> clusters -> complexity -> panel ->
/// regress, writing every artifact plus run_manifest.json (always, even on
/// failure). Returns the outcome rather than throwing.
RunOutcome cmd_run(const RunConfig& config);

/// Generates synthetic inputs at the configured input paths: stores,
/// ground truth, weather, mobility with the planted outcome process, and
/// cluster attributes.
RunOutcome cmd_synth(const RunConfig& config);

/// Re-runs a single stage ("field", "clusters", "complexity", "panel",
/// "regress") from cached upstream artifacts in output_dir.
RunOutcome cmd_stage(const std::string& stage, const RunConfig& config);

// Artifact readers used by the staged mode and by tests.
AmenityField read_amenity_field(const std::string& path, const DecayParams& params);
std::vector<Cluster> read_clusters(const std::string& geojson_path,
                                   const std::string& members_path);
void read_complexity_csv(const std::string& path, std::map<long long, double>& rescaled,
                         std::map<long long, int>& diversity);
void write_panel_csv(const std::string& path, const std::vector<PanelRow>& panel);
std::vector<PanelRow> read_panel_csv(const std::string& path);

}  // namespace citycomplex
