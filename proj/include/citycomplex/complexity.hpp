#pragma once

#include <map>
#include <string>
#include <vector>

#include "citycomplex/cluster.hpp"

namespace citycomplex {

enum class CategoryDepth { Primary, Subcategory };

enum class BinarizeMode { Presence, Rca };

/// Cluster x industry count matrix plus its 0/1 binarization.
struct ClusterIndustryMatrix {
    std::vector<long long> cluster_ids;       // row labels
    std::vector<std::string> industries;      // column labels
    std::vector<std::vector<double>> counts;  // member stores per industry
    std::vector<std::vector<int>> binary;     // filled by binarize()
    std::string binarization;                 // "presence" or "rca(threshold)"

    std::size_t n_clusters() const { return cluster_ids.size(); }
    std::size_t n_industries() const { return industries.size(); }
};

struct ComplexityScores {
    std::map<long long, double> eci_raw;       // standardized, sign-oriented
    std::map<long long, double> eci_rescaled;  // [0, 100]
    std::map<std::string, double> industry_complexity;
    std::map<long long, int> diversity;  // k_{c,0}
    std::map<std::string, int> ubiquity;  // k_{i,0}
    int iterations_used = 0;
    bool converged = false;
    std::vector<long long> excluded_clusters;  // off the largest component
};

/// Counts member stores per cluster per industry at the requested category
/// depth. Empty clusters are skipped with a warning.
ClusterIndustryMatrix build_matrix(const std::vector<Cluster>& clusters,
                                   const std::vector<StorePoint>& stores,
                                   CategoryDepth depth = CategoryDepth::Subcategory,
                                   std::vector<std::string>* warnings = nullptr);

/// Presence: M = 1 iff count > 0. Rca: M = 1 iff the share-of-share ratio
/// (x_ci / row total) / (column total / grand total) >= threshold. Zero
/// rows and columns are then pruned iteratively; AllPruned if nothing
/// survives. Returns a matrix restricted to the surviving rows/columns.
ClusterIndustryMatrix binarize(const ClusterIndustryMatrix& matrix, BinarizeMode mode,
                               double rca_threshold = 1.0);

/// Row sums of the binary matrix.
std::map<long long, int> diversity(const ClusterIndustryMatrix& matrix);

/// Method-of-reflections complexity scores. Alternates cluster/industry
/// averaging from the row/column sums, renormalizing each iterate, and stops
/// when the correlation of cluster scores between same-parity iterations
/// reaches 1 - tol or at max_iter. Scores are standardized (mean 0, sd 1)
/// and sign-oriented so corr(score, diversity) >= 0. Disconnected components
/// outside the largest are excluded and listed, never silently scored.
ComplexityScores eci_reflections(const ClusterIndustryMatrix& matrix, int max_iter = 10000,
                                 double tol = 1e-9);

/// Spectral cross-check: the eigenvector of the second-largest eigenvalue
/// of the cluster-similarity matrix M~_cc' = sum_i M_ci M_c'i / (k_c0 k_i0),
/// standardized and sign-oriented like eci_reflections.
std::map<long long, double> eci_eigen(const ClusterIndustryMatrix& matrix);

/// Min-max affine map of raw scores onto [0, 100] within the given basis
/// set. DegenerateVariance unless the basis spans >= 2 distinct values.
std::map<long long, double> rescale(const std::map<long long, double>& raw);

/// complexity.csv (cluster_id, year, eci_raw, eci_rescaled, diversity,
/// n_shops) plus a metadata JSON sidecar with binarization mode,
/// iterations_used, and convergence status.
void write_complexity_csv(const std::string& path, const std::string& metadata_path,
                          const ComplexityScores& scores,
                          const ClusterIndustryMatrix& matrix,
                          const std::vector<Cluster>& clusters);

}  // namespace citycomplex
