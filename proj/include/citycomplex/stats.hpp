#pragma once

#include <vector>

namespace citycomplex::stats {

double mean(const std::vector<double>& v);
double sample_sd(const std::vector<double>& v);

/// Average ranks (1-based, ties averaged).
std::vector<double> ranks(const std::vector<double>& v);

/// Pearson correlation; throws RegressionError("ZeroVariance") when either
/// input is constant.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

/// Spearman rank correlation (Pearson on average ranks).
double spearman(const std::vector<double>& x, const std::vector<double>& y);

/// Nearest-rank quantile threshold: the value at ceil(q * n) in ascending
/// order. Used for the top/bottom 20% dummies, ties at the cut included.
double quantile_nearest_rank(std::vector<double> v, double q);

}  // namespace citycomplex::stats
