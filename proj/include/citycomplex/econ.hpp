#pragma once

#include <map>
#include <string>
#include <vector>

#include "citycomplex/cluster.hpp"
#include "citycomplex/ols.hpp"

namespace citycomplex {

/// One cluster-period observation. Dummy fields are 0/1.
struct PanelRow {
    long long cluster_id = 0;
    int year = 0;
    int month = 0;
    double y = 0.0;  // floating population, thousands
    double temperature = 0.0;
    int high_year = 0;  // August 2018
    double rain = 0.0;
    int covid_period = 0;  // 2020-2021
    double complexity = 0.0;  // [0, 100]
    int diversity = 0;
    double total_shops = 0.0;
    int high_temp = 0;        // August 2018 (monthly panels)
    int high_complexity = 0;  // top 20% complexity
    int low_diversity = 0;    // bottom 20% diversity
    int high_green = 0;       // top 20% green share
    int near_metro = 0;

    /// Column value by name ("Temperature", "High_Year", ...).
    double value(const std::string& column) const;
};

/// A main effect or an interaction of two columns.
struct Term {
    std::string a;
    std::string b;  // empty for a main effect

    bool is_interaction() const { return !b.empty(); }
    std::string label() const { return b.empty() ? a : a + " x " + b; }
};

struct ModelSpec {
    std::string name;
    std::string dependent = "Y";
    std::vector<Term> terms;
    SeType robust_se = SeType::HC1;
};

/// Yearly-panel specs replicating the printed regression columns.
/// Columns 1-4 of the main table; column 4 rerun per timeslot gives the
/// timeslot table.
ModelSpec model_eq3(int column, const std::string& timeslot = "07-24");

/// Monthly-panel specs. Columns 1-5 of the first robustness table.
ModelSpec model_eq4_column(int column);

/// The reduced robustness spec {High_Complexity, High_Green, Near_Metro}
/// run per demographic group.
ModelSpec model_eq4(const std::string& demographic);

struct PanelConfig {
    std::string timeslot = "07-24";
    std::string demographic = "total";
    std::vector<int> years;
    std::vector<int> months = {8};
    double quantile_cut = 0.20;
};

/// Joins clusters (with attributes and complexity scores), mobility, and
/// weather into cluster-period rows. Mobility sources map to the cluster
/// whose seed is within assignment_radius_km; clusters with no mapped
/// mobility are dropped and logged. Missing weather for a requested period
/// raises MissingWeather.
std::vector<PanelRow> build_panel(const std::vector<Cluster>& clusters,
                                  const std::map<long long, double>& complexity,
                                  const std::map<long long, int>& diversity,
                                  const std::vector<MobilityCount>& mobility,
                                  const std::vector<WeatherRecord>& weather,
                                  const PanelConfig& config,
                                  std::vector<std::string>* warnings = nullptr);

/// Fits a model spec on the panel (design built from row columns, products
/// for interactions).
RegressionResult fit_ols(const std::vector<PanelRow>& panel, const ModelSpec& spec);

/// Lower-triangular Pearson correlation matrix over the named columns.
struct CorrelationTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> values;  // values[i][j], j <= i
};
CorrelationTable correlation_table(const std::vector<PanelRow>& panel,
                                   const std::vector<std::string>& columns);

void write_correlations_csv(const std::string& path, const CorrelationTable& table);

}  // namespace citycomplex
