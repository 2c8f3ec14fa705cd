#include "citycomplex/econ.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_map>

#include "citycomplex/errors.hpp"
#include "citycomplex/stats.hpp"

namespace citycomplex {

double PanelRow::value(const std::string& column) const {
    if (column == "Y") return y;
    if (column == "Temperature") return temperature;
    if (column == "High_Year") return high_year;
    if (column == "Rain") return rain;
    if (column == "Covid_Period") return covid_period;
    if (column == "Complexity") return complexity;
    if (column == "Diversity") return diversity;
    if (column == "Total_Shops") return total_shops;
    if (column == "High_Temp") return high_temp;
    if (column == "High_Complexity") return high_complexity;
    if (column == "Low_Diversity") return low_diversity;
    if (column == "High_Green") return high_green;
    if (column == "Near_Metro") return near_metro;
    throw RegressionError("UnknownColumn", "'" + column + "'");
}

ModelSpec model_eq3(int column, const std::string& timeslot) {
    if (column < 1 || column > 4) {
        throw RegressionError("BadModelColumn", "eq3 columns are 1..4");
    }
    ModelSpec spec;
    spec.name = "eq3_col" + std::to_string(column) +
                (timeslot == "07-24" ? "" : "_" + timeslot);
    spec.terms = {{"Temperature", ""}, {"High_Year", ""}, {"Rain", ""}, {"Covid_Period", ""}};
    if (column >= 2) {
        spec.terms.push_back({"Complexity", ""});
        spec.terms.push_back({"High_Year", "Complexity"});
    }
    if (column >= 3) spec.terms.push_back({"Diversity", ""});
    if (column == 3) spec.terms.push_back({"High_Year", "Diversity"});
    spec.terms.push_back({"Total_Shops", ""});
    return spec;
}

ModelSpec model_eq4_column(int column) {
    if (column < 1 || column > 5) {
        throw RegressionError("BadModelColumn", "eq4 columns are 1..5");
    }
    ModelSpec spec;
    spec.name = "eq4_col" + std::to_string(column);
    switch (column) {
        case 1:
            spec.terms = {{"High_Temp", ""}, {"High_Complexity", ""}, {"Near_Metro", ""}};
            break;
        case 2:
            spec.terms = {{"High_Temp", ""},
                          {"High_Complexity", ""},
                          {"High_Temp", "High_Complexity"},
                          {"Near_Metro", ""},
                          {"High_Complexity", "Near_Metro"}};
            break;
        case 3:
            spec.terms = {{"High_Temp", ""},
                          {"High_Complexity", ""},
                          {"Low_Diversity", ""},
                          {"High_Temp", "Low_Diversity"},
                          {"Near_Metro", ""}};
            break;
        case 4:
            spec.terms = {{"High_Temp", ""},
                          {"High_Complexity", ""},
                          {"High_Green", ""},
                          {"High_Temp", "High_Green"},
                          {"Near_Metro", ""}};
            break;
        case 5:
            spec.terms = {{"High_Complexity", ""}, {"High_Green", ""}, {"Near_Metro", ""}};
            break;
    }
    return spec;
}

ModelSpec model_eq4(const std::string& demographic) {
    ModelSpec spec = model_eq4_column(5);
    spec.name = "eq4_" + demographic;
    return spec;
}

std::vector<PanelRow> build_panel(const std::vector<Cluster>& clusters,
                                  const std::map<long long, double>& complexity,
                                  const std::map<long long, int>& diversity,
                                  const std::vector<MobilityCount>& mobility,
                                  const std::vector<WeatherRecord>& weather,
                                  const PanelConfig& config,
                                  std::vector<std::string>* warnings) {
    if (config.years.empty()) throw RegressionError("BadConfig", "no years requested");

    std::map<std::pair<int, int>, const WeatherRecord*> weather_by_period;
    for (const auto& w : weather) weather_by_period[{w.year, w.month}] = &w;
    for (int year : config.years) {
        for (int month : config.months) {
            if (!weather_by_period.count({year, month})) {
                throw RegressionError("MissingWeather", "no weather for " +
                                                            std::to_string(year) + "-" +
                                                            std::to_string(month));
            }
        }
    }

    // Map each mobility source to the cluster whose seed it can reach
    // (within that cluster's assignment radius); the nearest such seed
    // wins when several reach.
    std::unordered_map<std::string, LonLat> sources;
    for (const auto& m : mobility) sources.emplace(m.source_id, LonLat{m.lon, m.lat});

    std::unordered_map<std::string, long long> source_to_cluster;
    for (const auto& [sid, pos] : sources) {
        long long best = -1;
        double best_d = 0.0;
        for (const auto& c : clusters) {
            double d = geodesic_km(pos, c.seed_position);
            if (d <= c.assignment_radius_km && (best < 0 || d < best_d)) {
                best = c.cluster_id;
                best_d = d;
            }
        }
        if (best >= 0) source_to_cluster[sid] = best;
    }

    // Aggregate Y per (cluster, year, month) for the requested slot/group.
    std::map<std::tuple<long long, int, int>, double> y_sum;
    std::map<std::tuple<long long, int, int>, bool> y_seen;
    for (const auto& m : mobility) {
        if (m.timeslot != config.timeslot || m.demographic != config.demographic) continue;
        auto it = source_to_cluster.find(m.source_id);
        if (it == source_to_cluster.end()) continue;
        auto key = std::make_tuple(it->second, m.year, m.month);
        y_sum[key] += m.count;
        y_seen[key] = true;
    }

    // Cross-sectional top/bottom 20% thresholds over the scored clusters.
    std::vector<double> cx_values, green_values, div_values;
    for (const auto& c : clusters) {
        auto cit = complexity.find(c.cluster_id);
        if (cit == complexity.end()) continue;
        cx_values.push_back(cit->second);
        green_values.push_back(c.green_share);
        div_values.push_back(static_cast<double>(diversity.at(c.cluster_id)));
    }
    if (cx_values.empty()) {
        throw RegressionError("NoMobilityForCluster", "no scored clusters in panel");
    }
    double cx_hi = stats::quantile_nearest_rank(cx_values, 1.0 - config.quantile_cut);
    double green_hi = stats::quantile_nearest_rank(green_values, 1.0 - config.quantile_cut);
    double div_lo = stats::quantile_nearest_rank(div_values, config.quantile_cut);

    std::vector<PanelRow> panel;
    std::size_t dropped = 0;
    for (const auto& c : clusters) {
        auto cit = complexity.find(c.cluster_id);
        if (cit == complexity.end()) continue;  // off the scored component
        int div = diversity.at(c.cluster_id);
        for (int year : config.years) {
            for (int month : config.months) {
                auto key = std::make_tuple(c.cluster_id, year, month);
                if (!y_seen.count(key)) {
                    ++dropped;
                    continue;
                }
                const WeatherRecord& w = *weather_by_period.at({year, month});
                PanelRow row;
                row.cluster_id = c.cluster_id;
                row.year = year;
                row.month = month;
                row.y = y_sum.at(key) / 1000.0;
                row.temperature = w.mean_high_temp_c;
                row.rain = w.precip_mm;
                row.high_year = (year == 2018 && month == 8) ? 1 : 0;
                row.high_temp = row.high_year;
                row.covid_period = (year == 2020 || year == 2021) ? 1 : 0;
                row.complexity = cit->second;
                row.diversity = div;
                row.total_shops = static_cast<double>(c.member_ids.size());
                row.high_complexity = cit->second >= cx_hi ? 1 : 0;
                row.low_diversity = static_cast<double>(div) <= div_lo ? 1 : 0;
                row.high_green = c.green_share >= green_hi ? 1 : 0;
                row.near_metro = c.near_metro ? 1 : 0;
                panel.push_back(row);
            }
        }
    }
    if (dropped > 0 && warnings) {
        warnings->push_back("dropped " + std::to_string(dropped) +
                            " cluster-periods with no mapped mobility");
    }
    if (panel.empty()) {
        throw RegressionError("NoMobilityForCluster",
                              "no cluster-period had mapped mobility for timeslot " +
                                  config.timeslot + " / " + config.demographic);
    }
    return panel;
}

RegressionResult fit_ols(const std::vector<PanelRow>& panel, const ModelSpec& spec) {
    std::vector<double> y;
    y.reserve(panel.size());
    for (const auto& row : panel) y.push_back(row.value(spec.dependent));

    std::vector<std::vector<double>> columns;
    std::vector<std::string> names;
    for (const auto& term : spec.terms) {
        std::vector<double> col;
        col.reserve(panel.size());
        for (const auto& row : panel) {
            double v = row.value(term.a);
            if (term.is_interaction()) v *= row.value(term.b);
            col.push_back(v);
        }
        columns.push_back(std::move(col));
        names.push_back(term.label());
    }
    RegressionResult result = fit_ols_design(y, columns, names, spec.robust_se);
    result.model = spec.name;
    return result;
}

CorrelationTable correlation_table(const std::vector<PanelRow>& panel,
                                   const std::vector<std::string>& columns) {
    if (panel.size() < 2) throw RegressionError("InsufficientRows", "need >= 2 rows");
    CorrelationTable table;
    table.columns = columns;
    std::vector<std::vector<double>> data;
    for (const auto& name : columns) {
        std::vector<double> col;
        col.reserve(panel.size());
        for (const auto& row : panel) col.push_back(row.value(name));
        if (stats::sample_sd(col) == 0.0) {
            throw RegressionError("ZeroVariance", "column '" + name + "' is constant");
        }
        data.push_back(std::move(col));
    }
    for (std::size_t i = 0; i < columns.size(); ++i) {
        std::vector<double> row;
        for (std::size_t j = 0; j <= i; ++j) {
            row.push_back(i == j ? 1.0 : stats::pearson(data[i], data[j]));
        }
        table.values.push_back(std::move(row));
    }
    return table;
}

void write_correlations_csv(const std::string& path, const CorrelationTable& table) {
    std::ofstream out(path);
    if (!out) throw RegressionError("FileNotWritable", "cannot write " + path);
    out.precision(6);
    out << "column";
    for (const auto& c : table.columns) out << ',' << c;
    out << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << table.columns[i];
        for (std::size_t j = 0; j < table.columns.size(); ++j) {
            out << ',';
            if (j <= i) out << table.values[i][j];
        }
        out << '\n';
    }
}

}  // namespace citycomplex
