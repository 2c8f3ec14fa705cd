#pragma once

#include <string>
#include <vector>

#include "citycomplex/ols.hpp"

namespace citycomplex {

/// Publication-style text table: one column per result, coefficients with
/// robust SEs in parentheses beneath, stars attached, footer with
/// Observations, Adjusted R2, Residual Std. Error (df), F Statistic (df1;
/// df2). Row order follows first appearance across the results.
std::string render_table(const std::vector<RegressionResult>& results,
                         const std::string& title = "");

/// Tidy per-term rows: model, term, estimate, se, t, p, stars.
void write_regression_csv(const std::string& path,
                          const std::vector<RegressionResult>& results);

/// Reads back a file written by write_regression_csv. Footer statistics are
/// restored from the companion columns (n, adj_r2, ...) carried per row.
std::vector<RegressionResult> read_regression_csv(const std::string& path);

}  // namespace citycomplex
