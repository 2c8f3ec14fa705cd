#pragma once

#include <string>
#include <vector>

namespace citycomplex {

enum class SeType { HC1, HC0, Classical };

SeType se_type_from_string(const std::string& name);
std::string to_string(SeType t);

struct CoefEntry {
    std::string term;
    double estimate = 0.0;
    double se = 0.0;
    double t = 0.0;
    double p = 1.0;
    std::string stars;
};

struct RegressionResult {
    std::string model;  // caller-supplied label
    std::vector<CoefEntry> coefficients;  // regressors, then "(Intercept)" last
    long long n = 0;
    double r_squared = 0.0;
    double adj_r_squared = 0.0;
    double residual_se = 0.0;
    long long df_residual = 0;  // n - (#terms + 1)
    double f_statistic = 0.0;
    long long f_df1 = 0;
    long long f_df2 = 0;
    double f_p_value = 1.0;
    SeType se_type = SeType::HC1;

    const CoefEntry* find(const std::string& term) const;
};

/// Least squares on an explicit design (column-major by vector of columns,
/// intercept appended internally). Column names must match `columns` size.
/// Throws RankDeficient naming the offending columns, or InsufficientRows.
RegressionResult fit_ols_design(const std::vector<double>& y,
                                const std::vector<std::vector<double>>& columns,
                                const std::vector<std::string>& names,
                                SeType se_type = SeType::HC1);

/// Significance stars at the 0.1 / 0.05 / 0.01 thresholds, half-open
/// (p = 0.1 gets none).
std::string star_codes(double p);

}  // namespace citycomplex
