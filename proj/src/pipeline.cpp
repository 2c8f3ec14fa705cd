#include "citycomplex/pipeline.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "citycomplex/csv.hpp"
#include "citycomplex/errors.hpp"
#include "citycomplex/table.hpp"

namespace citycomplex {

namespace {

std::vector<int> parse_int_list(const std::string& value) {
    std::vector<int> out;
    std::istringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoi(item));
    }
    return out;
}

std::string join_ints(const std::vector<int>& v) {
    std::string out;
    for (int x : v) {
        if (!out.empty()) out += ",";
        out += std::to_string(x);
    }
    return out;
}

bool parse_bool(const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw PipelineError("BadConfig", "not a boolean: '" + value + "'");
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
    if (key == "stores") stores_path = value;
    else if (key == "weather") weather_path = value;
    else if (key == "mobility") mobility_path = value;
    else if (key == "cluster_attributes") attributes_path = value;
    else if (key == "output_dir") output_dir = value;
    else if (key == "gamma") gamma = std::stod(value);
    else if (key == "cutoff_km") cutoff_km = std::stod(value);
    else if (key == "include_self") include_self = parse_bool(value);
    else if (key == "cell_km") cell_km = std::stod(value);
    else if (key == "nms_radius_km") nms_radius_km = std::stod(value);
    else if (key == "r_max_km") r_max_km = std::stod(value);
    else if (key == "r_step_km") r_step_km = std::stod(value);
    else if (key == "binarization") binarization = value;
    else if (key == "rca_threshold") rca_threshold = std::stod(value);
    else if (key == "category_depth") category_depth = value;
    else if (key == "rescale_basis") rescale_basis = value;
    else if (key == "se_type") se_type = value;
    else if (key == "quantile_cut") quantile_cut = std::stod(value);
    else if (key == "base_year") base_year = std::stoi(value);
    else if (key == "years") years = parse_int_list(value);
    else if (key == "months") months = parse_int_list(value);
    else if (key == "timeslot") timeslot = value;
    else if (key == "demographic") demographic = value;
    else if (key == "threads") threads = std::stoi(value);
    else if (key == "synth_seed") synth.seed = std::stoull(value);
    else if (key == "n_centers") synth.n_centers = std::stoi(value);
    else if (key == "stores_per_center") synth.stores_per_center = std::stod(value);
    else if (key == "center_spread_km") synth.center_spread_km = std::stod(value);
    else if (key == "min_separation_km") synth.min_separation_km = std::stod(value);
    else if (key == "noise_sd") synth.dgp.noise_sd = std::stod(value);
    else throw PipelineError("BadConfig", "unknown config key '" + key + "'");
}

std::map<std::string, std::string> RunConfig::echo() const {
    std::map<std::string, std::string> e;
    e["stores"] = stores_path;
    e["weather"] = weather_path;
    e["mobility"] = mobility_path;
    e["cluster_attributes"] = attributes_path;
    e["output_dir"] = output_dir;
    e["gamma"] = std::to_string(gamma);
    e["cutoff_km"] = std::to_string(cutoff_km);
    e["include_self"] = include_self ? "true" : "false";
    e["cell_km"] = std::to_string(cell_km);
    e["nms_radius_km"] = std::to_string(nms_radius_km);
    e["r_max_km"] = std::to_string(r_max_km);
    e["r_step_km"] = std::to_string(r_step_km);
    e["binarization"] = binarization;
    e["rca_threshold"] = std::to_string(rca_threshold);
    e["category_depth"] = category_depth;
    e["rescale_basis"] = rescale_basis;
    e["se_type"] = se_type;
    e["quantile_cut"] = std::to_string(quantile_cut);
    e["base_year"] = std::to_string(base_year);
    e["years"] = join_ints(years);
    e["months"] = join_ints(months);
    e["timeslot"] = timeslot;
    e["demographic"] = demographic;
    e["threads"] = std::to_string(threads);
    e["synth_seed"] = std::to_string(synth.seed);
    e["n_centers"] = std::to_string(synth.n_centers);
    e["stores_per_center"] = std::to_string(synth.stores_per_center);
    e["center_spread_km"] = std::to_string(synth.center_spread_km);
    e["min_separation_km"] = std::to_string(synth.min_separation_km);
    e["noise_sd"] = std::to_string(synth.dgp.noise_sd);
    return e;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PipelineError("ConfigNotFound", "cannot open " + path);
    RunConfig config;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos) {
                throw PipelineError("BadConfig", path + " line " +
                                                     std::to_string(line_number) +
                                                     ": expected key = value");
            }
            continue;
        }
        auto trim = [](std::string s) {
            std::size_t b = s.find_first_not_of(" \t\r");
            std::size_t e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        config.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return config;
}

std::string file_checksum(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "missing";
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    char buffer[1 << 16];
    while (in.read(buffer, sizeof(buffer)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(buffer[i]);
            hash *= 0x100000001B3ULL;
        }
    }
    std::ostringstream os;
    os << std::hex << hash;
    return os.str();
}

namespace {

namespace fs = std::filesystem;

struct PipelineState {
    std::vector<StorePoint> stores;
    std::vector<WeatherRecord> weather;
    std::vector<MobilityCount> mobility;
    std::vector<ClusterAttribute> attrs;
    AmenityField field;
    std::vector<Cluster> clusters;
    ClusterIndustryMatrix matrix;
    ComplexityScores scores;
    std::vector<PanelRow> panel;
};

DecayParams decay_params(const RunConfig& c) {
    DecayParams p;
    p.gamma = c.gamma;
    p.cutoff_km = c.cutoff_km;
    p.include_self = c.include_self;
    return p;
}

ClusterParams cluster_params(const RunConfig& c) {
    ClusterParams p;
    p.nms_radius_km = c.nms_radius_km;
    p.r_max_km = c.r_max_km;
    p.r_step_km = c.r_step_km;
    return p;
}

std::vector<StationSite> station_sites(const std::vector<MobilityCount>& mobility) {
    std::vector<StationSite> sites;
    std::map<std::string, LonLat> unique;
    for (const auto& m : mobility) unique.emplace(m.source_id, LonLat{m.lon, m.lat});
    for (const auto& [id, pos] : unique) sites.push_back({id, pos});
    return sites;
}

void stage_ingest(PipelineState& state, const RunConfig& config) {
    state.stores = ingest_stores(config.stores_path, config.base_year);
    state.weather = ingest_weather(config.weather_path);
    state.mobility = ingest_mobility(config.mobility_path);
    if (!config.attributes_path.empty() && fs::exists(config.attributes_path)) {
        state.attrs = ingest_cluster_attributes(config.attributes_path);
    }
}

void stage_field(PipelineState& state, const RunConfig& config) {
    double cell = config.cell_km > 0.0 ? config.cell_km : config.cutoff_km;
    GridIndex index(state.stores, cell);
    state.field = amenity_field(state.stores, decay_params(config), index, config.threads);
    write_amenity_field(config.output_dir + "/amenity_field.csv", state.field);
}

void stage_clusters(PipelineState& state, const RunConfig& config,
                    std::vector<std::string>& warnings) {
    double cell = config.cell_km > 0.0 ? config.cell_km : config.cutoff_km;
    GridIndex index(state.stores, cell);
    state.clusters = detect_clusters(state.stores, state.field, index,
                                     cluster_params(config));
    attach_attributes(state.clusters, state.attrs, station_sites(state.mobility),
                      state.stores, &warnings);
    write_clusters_geojson(config.output_dir + "/clusters.geojson", state.clusters,
                           state.stores);
    write_members_csv(config.output_dir + "/members.csv", state.clusters, state.stores);
}

void stage_complexity(PipelineState& state, const RunConfig& config,
                      std::vector<std::string>& warnings) {
    CategoryDepth depth = config.category_depth == "primary" ? CategoryDepth::Primary
                                                             : CategoryDepth::Subcategory;
    auto counts = build_matrix(state.clusters, state.stores, depth, &warnings);
    BinarizeMode mode =
        config.binarization == "presence" ? BinarizeMode::Presence : BinarizeMode::Rca;
    state.matrix = binarize(counts, mode, config.rca_threshold);
    state.scores = eci_reflections(state.matrix);
    write_complexity_csv(config.output_dir + "/complexity.csv",
                         config.output_dir + "/complexity_meta.json", state.scores,
                         state.matrix, state.clusters);
}

void stage_panel(PipelineState& state, const RunConfig& config,
                 std::vector<std::string>& warnings) {
    PanelConfig pc;
    pc.timeslot = config.timeslot;
    pc.demographic = config.demographic;
    pc.years = config.years;
    pc.months = config.months;
    pc.quantile_cut = config.quantile_cut;
    state.panel = build_panel(state.clusters, state.scores.eci_rescaled,
                              state.scores.diversity, state.mobility, state.weather, pc,
                              &warnings);
    write_panel_csv(config.output_dir + "/panel.csv", state.panel);
}

void stage_regress(PipelineState& state, const RunConfig& config) {
    SeType se = se_type_from_string(config.se_type);
    std::vector<RegressionResult> results;
    bool yearly = config.years.size() > 1;
    if (yearly) {
        for (int col = 1; col <= 4; ++col) {
            ModelSpec spec = model_eq3(col, config.timeslot);
            spec.robust_se = se;
            results.push_back(fit_ols(state.panel, spec));
        }
    } else {
        for (int col = 1; col <= 5; ++col) {
            ModelSpec spec = model_eq4_column(col);
            spec.robust_se = se;
            results.push_back(fit_ols(state.panel, spec));
        }
    }
    std::ofstream table_out(config.output_dir + "/regression_table.txt");
    table_out << render_table(results);
    write_regression_csv(config.output_dir + "/regression.csv", results);

    std::vector<std::string> corr_columns =
        yearly ? std::vector<std::string>{"Temperature", "High_Year", "Rain", "Covid_Period",
                                          "Complexity", "Diversity", "Total_Shops"}
               : std::vector<std::string>{"High_Temp", "High_Complexity", "Low_Diversity",
                                          "High_Green", "Near_Metro"};
    write_correlations_csv(config.output_dir + "/correlations.csv",
                           correlation_table(state.panel, corr_columns));
}

void write_manifest(const RunConfig& config, const RunOutcome& outcome) {
    nlohmann::ordered_json manifest;
    manifest["status"] = outcome.ok ? "ok" : "failed";
    if (!outcome.ok) {
        manifest["failed_stage"] = outcome.failed_stage;
        manifest["error"] = outcome.error;
    }
    manifest["parameters"] = config.echo();
    nlohmann::ordered_json inputs;
    inputs["stores"] = file_checksum(config.stores_path);
    inputs["weather"] = file_checksum(config.weather_path);
    inputs["mobility"] = file_checksum(config.mobility_path);
    if (!config.attributes_path.empty()) {
        inputs["cluster_attributes"] = file_checksum(config.attributes_path);
    }
    manifest["input_checksums"] = inputs;
    nlohmann::ordered_json timings = nlohmann::ordered_json::array();
    for (const auto& t : outcome.timings) {
        timings.push_back({{"stage", t.stage}, {"ms", t.milliseconds}});
    }
    manifest["stage_timings"] = timings;
    manifest["warnings"] = outcome.warnings;

    std::ofstream out(config.output_dir + "/run_manifest.json");
    out << manifest.dump(2) << '\n';
}

template <typename Fn>
void timed_stage(RunOutcome& outcome, const std::string& name, Fn&& fn) {
    auto start = std::chrono::steady_clock::now();
    fn();
    auto stop = std::chrono::steady_clock::now();
    outcome.timings.push_back(
        {name, std::chrono::duration<double, std::milli>(stop - start).count()});
}

}  // namespace

RunOutcome cmd_run(const RunConfig& config) {
    RunOutcome outcome;
    fs::create_directories(config.output_dir);
    PipelineState state;
    std::string current = "ingest";
    try {
        timed_stage(outcome, "ingest", [&] { stage_ingest(state, config); });
        current = "field";
        timed_stage(outcome, "field", [&] { stage_field(state, config); });
        current = "clusters";
        timed_stage(outcome, "clusters",
                    [&] { stage_clusters(state, config, outcome.warnings); });
        current = "complexity";
        timed_stage(outcome, "complexity",
                    [&] { stage_complexity(state, config, outcome.warnings); });
        current = "panel";
        timed_stage(outcome, "panel", [&] { stage_panel(state, config, outcome.warnings); });
        current = "regress";
        timed_stage(outcome, "regress", [&] { stage_regress(state, config); });
        outcome.ok = true;
    } catch (const std::exception& e) {
        outcome.ok = false;
        outcome.failed_stage = current;
        outcome.error = e.what();
    }
    write_manifest(config, outcome);
    return outcome;
}

RunOutcome cmd_synth(const RunConfig& config) {
    RunOutcome outcome;
    std::string current = "synth";
    try {
        SynthConfig sc = config.synth;
        sc.base_year = config.base_year;
        sc.years = config.years;

        SynthCity city;
        timed_stage(outcome, "synth_city", [&] {
            city = gen_city(sc);
            write_stores(config.stores_path, city.stores);
            write_ground_truth(config.stores_path + ".truth.csv", city);
            write_weather(config.weather_path, default_weather_table(config.years));
        });

        // Detect clusters on the generated city so the planted mobility
        // process sees the same spatial units the pipeline will.
        current = "synth_mobility";
        timed_stage(outcome, "synth_mobility", [&] {
            double cell = config.cell_km > 0.0 ? config.cell_km : config.cutoff_km;
            GridIndex index(city.stores, cell);
            AmenityField field =
                amenity_field(city.stores, decay_params(config), index, config.threads);
            auto clusters =
                detect_clusters(city.stores, field, index, cluster_params(config));
            auto counts = build_matrix(clusters, city.stores);
            auto matrix = binarize(counts, config.binarization == "presence"
                                               ? BinarizeMode::Presence
                                               : BinarizeMode::Rca,
                                   config.rca_threshold);
            auto scores = eci_reflections(matrix);

            std::vector<ClusterDgpInput> inputs;
            for (const auto& c : clusters) {
                auto it = scores.eci_rescaled.find(c.cluster_id);
                if (it == scores.eci_rescaled.end()) continue;
                ClusterDgpInput in;
                in.cluster_id = c.cluster_id;
                in.station_position = c.seed_position;
                in.complexity = it->second;
                in.diversity = scores.diversity.at(c.cluster_id);
                in.total_shops = static_cast<double>(c.member_ids.size());
                inputs.push_back(in);
            }
            auto weather = default_weather_table(config.years);
            auto gen = gen_mobility(sc, inputs, weather);
            if (gen.clamped_rows > 0) {
                outcome.warnings.push_back(std::to_string(gen.clamped_rows) +
                                           " negative outcome draws clamped at 0");
            }
            write_mobility(config.mobility_path, gen.mobility);

            // Synthetic green areas: a deterministic share of each hull.
            if (!config.attributes_path.empty()) {
                CounterRng rng(sc.seed ^ 0x6E657267726E65ULL);
                std::vector<std::vector<std::string>> rows;
                for (const auto& c : clusters) {
                    double share = rng.uniform();
                    share *= share;  // skew toward small shares
                    std::ostringstream green;
                    green.precision(17);
                    green << share * c.hull_area_km2 * 1e6;
                    rows.push_back({std::to_string(c.cluster_id), green.str(),
                                    "station_" + std::to_string(c.cluster_id)});
                }
                csv::write_file(config.attributes_path,
                                {"cluster_id", "green_area_m2", "metro_station_ids"}, rows);
            }
        });
        outcome.ok = true;
    } catch (const std::exception& e) {
        outcome.ok = false;
        outcome.failed_stage = current;
        outcome.error = e.what();
    }
    return outcome;
}

RunOutcome cmd_stage(const std::string& stage, const RunConfig& config) {
    RunOutcome outcome;
    fs::create_directories(config.output_dir);
    PipelineState state;
    auto require = [&](const std::string& artifact, const std::string& upstream) {
        if (!fs::exists(config.output_dir + "/" + artifact)) {
            throw PipelineError("MissingUpstream",
                                "stage '" + stage + "' needs artifact " + artifact +
                                    " from stage '" + upstream + "'");
        }
    };
    try {
        if (stage == "field") {
            stage_ingest(state, config);
            timed_stage(outcome, "field", [&] { stage_field(state, config); });
        } else if (stage == "clusters") {
            require("amenity_field.csv", "field");
            stage_ingest(state, config);
            state.field =
                read_amenity_field(config.output_dir + "/amenity_field.csv",
                                   decay_params(config));
            timed_stage(outcome, "clusters",
                        [&] { stage_clusters(state, config, outcome.warnings); });
        } else if (stage == "complexity") {
            require("clusters.geojson", "clusters");
            require("members.csv", "clusters");
            stage_ingest(state, config);
            state.clusters = read_clusters(config.output_dir + "/clusters.geojson",
                                           config.output_dir + "/members.csv");
            timed_stage(outcome, "complexity",
                        [&] { stage_complexity(state, config, outcome.warnings); });
        } else if (stage == "panel") {
            require("clusters.geojson", "clusters");
            require("members.csv", "clusters");
            require("complexity.csv", "complexity");
            stage_ingest(state, config);
            state.clusters = read_clusters(config.output_dir + "/clusters.geojson",
                                           config.output_dir + "/members.csv");
            read_complexity_csv(config.output_dir + "/complexity.csv",
                                state.scores.eci_rescaled, state.scores.diversity);
            timed_stage(outcome, "panel",
                        [&] { stage_panel(state, config, outcome.warnings); });
        } else if (stage == "regress") {
            require("panel.csv", "panel");
            state.panel = read_panel_csv(config.output_dir + "/panel.csv");
            timed_stage(outcome, "regress", [&] { stage_regress(state, config); });
        } else {
            throw PipelineError("UnknownStage", "'" + stage + "'");
        }
        outcome.ok = true;
    } catch (const std::exception& e) {
        outcome.ok = false;
        outcome.failed_stage = stage;
        outcome.error = e.what();
    }
    write_manifest(config, outcome);
    return outcome;
}

AmenityField read_amenity_field(const std::string& path, const DecayParams& params) {
    csv::Table table = csv::read_file(path);
    auto c_id = table.column("store_id");
    auto c_a = table.column("A");
    if (!c_id || !c_a) throw PipelineError("BadArtifact", path + " is not an amenity dump");
    AmenityField field;
    field.params = params;
    std::size_t row_number = 1;
    for (const auto& row : table.rows) {
        ++row_number;
        field.values[csv::parse_int(row[*c_id], row_number)] =
            csv::parse_double(row[*c_a], row_number);
    }
    return field;
}

std::vector<Cluster> read_clusters(const std::string& geojson_path,
                                   const std::string& members_path) {
    std::ifstream in(geojson_path);
    if (!in) throw PipelineError("BadArtifact", "cannot open " + geojson_path);
    nlohmann::json doc = nlohmann::json::parse(in);

    std::map<long long, std::vector<long long>> members;
    csv::Table table = csv::read_file(members_path);
    auto c_store = table.column("store_id");
    auto c_cluster = table.column("cluster_id");
    if (!c_store || !c_cluster) {
        throw PipelineError("BadArtifact", members_path + " is not a members dump");
    }
    std::size_t row_number = 1;
    for (const auto& row : table.rows) {
        ++row_number;
        if (row[*c_cluster].empty()) continue;  // unassigned store
        members[csv::parse_int(row[*c_cluster], row_number)].push_back(
            csv::parse_int(row[*c_store], row_number));
    }

    std::vector<Cluster> clusters;
    for (const auto& feature : doc.at("features")) {
        const auto& props = feature.at("properties");
        Cluster c;
        c.cluster_id = props.at("cluster_id").get<long long>();
        c.year = props.at("year").get<int>();
        c.seed_amenity = props.at("A_seed").get<double>();
        c.hull_area_km2 = props.at("hull_area_km2").get<double>();
        c.assignment_radius_km = props.at("radius_km").get<double>();
        c.near_metro = props.at("near_metro").get<int>() != 0;
        c.green_share = props.at("green_share").get<double>();
        c.seed_store_id = props.at("seed_store_id").get<long long>();
        c.seed_position = {props.at("seed_lon").get<double>(),
                           props.at("seed_lat").get<double>()};
        c.centroid = {props.at("centroid_lon").get<double>(),
                      props.at("centroid_lat").get<double>()};
        auto it = members.find(c.cluster_id);
        if (it != members.end()) c.member_ids = it->second;
        clusters.push_back(std::move(c));
    }
    return clusters;
}

void read_complexity_csv(const std::string& path, std::map<long long, double>& rescaled,
                         std::map<long long, int>& diversity) {
    csv::Table table = csv::read_file(path);
    auto c_id = table.column("cluster_id");
    auto c_resc = table.column("eci_rescaled");
    auto c_div = table.column("diversity");
    if (!c_id || !c_resc || !c_div) {
        throw PipelineError("BadArtifact", path + " is not a complexity dump");
    }
    std::size_t row_number = 1;
    for (const auto& row : table.rows) {
        ++row_number;
        long long id = csv::parse_int(row[*c_id], row_number);
        rescaled[id] = csv::parse_double(row[*c_resc], row_number);
        diversity[id] = static_cast<int>(csv::parse_int(row[*c_div], row_number));
    }
}

void write_panel_csv(const std::string& path, const std::vector<PanelRow>& panel) {
    std::vector<std::vector<std::string>> rows;
    auto fmt = [](double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        return os.str();
    };
    for (const auto& r : panel) {
        rows.push_back({std::to_string(r.cluster_id), std::to_string(r.year),
                        std::to_string(r.month), fmt(r.y), fmt(r.temperature),
                        std::to_string(r.high_year), fmt(r.rain),
                        std::to_string(r.covid_period), fmt(r.complexity),
                        std::to_string(r.diversity), fmt(r.total_shops),
                        std::to_string(r.high_temp), std::to_string(r.high_complexity),
                        std::to_string(r.low_diversity), std::to_string(r.high_green),
                        std::to_string(r.near_metro)});
    }
    csv::write_file(path,
                    {"cluster_id", "year", "month", "Y", "Temperature", "High_Year", "Rain",
                     "Covid_Period", "Complexity", "Diversity", "Total_Shops", "High_Temp",
                     "High_Complexity", "Low_Diversity", "High_Green", "Near_Metro"},
                    rows);
}

std::vector<PanelRow> read_panel_csv(const std::string& path) {
    csv::Table table = csv::read_file(path);
    auto col = [&](const std::string& name) {
        auto idx = table.column(name);
        if (!idx) throw PipelineError("BadArtifact", path + " lacks column " + name);
        return *idx;
    };
    std::size_t c_id = col("cluster_id"), c_year = col("year"), c_month = col("month"),
                c_y = col("Y"), c_temp = col("Temperature"), c_hy = col("High_Year"),
                c_rain = col("Rain"), c_covid = col("Covid_Period"),
                c_cx = col("Complexity"), c_div = col("Diversity"),
                c_shops = col("Total_Shops"), c_ht = col("High_Temp"),
                c_hc = col("High_Complexity"), c_ld = col("Low_Diversity"),
                c_hg = col("High_Green"), c_nm = col("Near_Metro");
    std::vector<PanelRow> panel;
    std::size_t row_number = 1;
    for (const auto& row : table.rows) {
        ++row_number;
        PanelRow r;
        r.cluster_id = csv::parse_int(row[c_id], row_number);
        r.year = static_cast<int>(csv::parse_int(row[c_year], row_number));
        r.month = static_cast<int>(csv::parse_int(row[c_month], row_number));
        r.y = csv::parse_double(row[c_y], row_number);
        r.temperature = csv::parse_double(row[c_temp], row_number);
        r.high_year = static_cast<int>(csv::parse_int(row[c_hy], row_number));
        r.rain = csv::parse_double(row[c_rain], row_number);
        r.covid_period = static_cast<int>(csv::parse_int(row[c_covid], row_number));
        r.complexity = csv::parse_double(row[c_cx], row_number);
        r.diversity = static_cast<int>(csv::parse_int(row[c_div], row_number));
        r.total_shops = csv::parse_double(row[c_shops], row_number);
        r.high_temp = static_cast<int>(csv::parse_int(row[c_ht], row_number));
        r.high_complexity = static_cast<int>(csv::parse_int(row[c_hc], row_number));
        r.low_diversity = static_cast<int>(csv::parse_int(row[c_ld], row_number));
        r.high_green = static_cast<int>(csv::parse_int(row[c_hg], row_number));
        r.near_metro = static_cast<int>(csv::parse_int(row[c_nm], row_number));
        panel.push_back(r);
    }
    return panel;
}

}  // namespace citycomplex
