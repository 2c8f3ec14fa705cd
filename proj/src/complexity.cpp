#include "citycomplex/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <set>
#include <unordered_map>

#include <Eigen/Dense>
#include <json.hpp>

#include "citycomplex/errors.hpp"
#include "citycomplex/stats.hpp"

namespace citycomplex {

namespace {

std::string category_at_depth(const std::string& category, CategoryDepth depth) {
    return depth == CategoryDepth::Primary ? primary_category(category) : category;
}

void standardize(std::vector<double>& v) {
    double m = stats::mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    double sd = std::sqrt(ss / static_cast<double>(v.size()));
    if (sd < 1e-12) {
        throw ComplexityError("DegenerateVariance", "all cluster scores equal");
    }
    for (double& x : v) x = (x - m) / sd;
}

void orient_sign(std::vector<double>& scores, const std::vector<double>& diversity) {
    double sxy = 0.0;
    double mx = stats::mean(scores), my = stats::mean(diversity);
    for (std::size_t i = 0; i < scores.size(); ++i) {
        sxy += (scores[i] - mx) * (diversity[i] - my);
    }
    if (sxy < 0.0) {
        for (double& x : scores) x = -x;
    }
}

/// Rows reachable from row 0 in the bipartite adjacency, then the largest
/// component overall. Returns row membership per component id.
std::vector<int> component_of_rows(const std::vector<std::vector<int>>& binary) {
    std::size_t nc = binary.size();
    std::size_t ni = nc ? binary[0].size() : 0;
    std::vector<int> row_comp(nc, -1), col_comp(ni, -1);
    int comp = 0;
    for (std::size_t start = 0; start < nc; ++start) {
        if (row_comp[start] >= 0) continue;
        std::queue<std::pair<bool, std::size_t>> frontier;  // (is_row, index)
        frontier.push({true, start});
        row_comp[start] = comp;
        while (!frontier.empty()) {
            auto [is_row, idx] = frontier.front();
            frontier.pop();
            if (is_row) {
                for (std::size_t i = 0; i < ni; ++i) {
                    if (binary[idx][i] && col_comp[i] < 0) {
                        col_comp[i] = comp;
                        frontier.push({false, i});
                    }
                }
            } else {
                for (std::size_t c = 0; c < nc; ++c) {
                    if (binary[c][idx] && row_comp[c] < 0) {
                        row_comp[c] = comp;
                        frontier.push({true, c});
                    }
                }
            }
        }
        ++comp;
    }
    return row_comp;
}

/// Restricts the binary matrix to the largest connected component; rows
/// outside it are reported in `excluded`.
ClusterIndustryMatrix largest_component(const ClusterIndustryMatrix& matrix,
                                        std::vector<long long>& excluded) {
    auto row_comp = component_of_rows(matrix.binary);
    int n_comp = row_comp.empty() ? 0 : *std::max_element(row_comp.begin(), row_comp.end()) + 1;
    if (n_comp <= 1) return matrix;

    std::vector<std::size_t> comp_size(static_cast<std::size_t>(n_comp), 0);
    for (int c : row_comp) ++comp_size[static_cast<std::size_t>(c)];
    int keep = static_cast<int>(
        std::max_element(comp_size.begin(), comp_size.end()) - comp_size.begin());

    ClusterIndustryMatrix out;
    out.binarization = matrix.binarization;
    std::vector<std::size_t> rows, cols;
    for (std::size_t r = 0; r < matrix.n_clusters(); ++r) {
        if (row_comp[r] == keep) {
            rows.push_back(r);
        } else {
            excluded.push_back(matrix.cluster_ids[r]);
        }
    }
    for (std::size_t i = 0; i < matrix.n_industries(); ++i) {
        for (std::size_t r : rows) {
            if (matrix.binary[r][i]) {
                cols.push_back(i);
                break;
            }
        }
    }
    for (std::size_t r : rows) out.cluster_ids.push_back(matrix.cluster_ids[r]);
    for (std::size_t i : cols) out.industries.push_back(matrix.industries[i]);
    for (std::size_t r : rows) {
        std::vector<double> crow;
        std::vector<int> brow;
        for (std::size_t i : cols) {
            crow.push_back(matrix.counts[r][i]);
            brow.push_back(matrix.binary[r][i]);
        }
        out.counts.push_back(std::move(crow));
        out.binary.push_back(std::move(brow));
    }
    return out;
}

void require_binary(const ClusterIndustryMatrix& matrix) {
    if (matrix.binary.empty()) {
        throw ComplexityError("NotBinarized", "call binarize() before scoring");
    }
}

}  // namespace

ClusterIndustryMatrix build_matrix(const std::vector<Cluster>& clusters,
                                   const std::vector<StorePoint>& stores,
                                   CategoryDepth depth,
                                   std::vector<std::string>* warnings) {
    std::unordered_map<long long, const StorePoint*> by_id;
    for (const auto& s : stores) by_id[s.store_id] = &s;

    std::set<std::string> industry_set;
    for (const auto& c : clusters) {
        for (long long id : c.member_ids) {
            industry_set.insert(category_at_depth(by_id.at(id)->category, depth));
        }
    }

    ClusterIndustryMatrix matrix;
    matrix.industries.assign(industry_set.begin(), industry_set.end());
    std::unordered_map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < matrix.industries.size(); ++i) col[matrix.industries[i]] = i;

    for (const auto& c : clusters) {
        if (c.member_ids.empty()) {
            if (warnings) {
                warnings->push_back("cluster " + std::to_string(c.cluster_id) +
                                    " is empty, excluded from the industry matrix");
            }
            continue;
        }
        std::vector<double> row(matrix.industries.size(), 0.0);
        for (long long id : c.member_ids) {
            row[col.at(category_at_depth(by_id.at(id)->category, depth))] += 1.0;
        }
        matrix.cluster_ids.push_back(c.cluster_id);
        matrix.counts.push_back(std::move(row));
    }
    return matrix;
}

ClusterIndustryMatrix binarize(const ClusterIndustryMatrix& matrix, BinarizeMode mode,
                               double rca_threshold) {
    std::size_t nc = matrix.n_clusters();
    std::size_t ni = matrix.n_industries();
    if (nc == 0 || ni == 0) throw ComplexityError("AllPruned", "empty count matrix");

    std::vector<std::vector<int>> binary(nc, std::vector<int>(ni, 0));
    if (mode == BinarizeMode::Presence) {
        for (std::size_t c = 0; c < nc; ++c) {
            for (std::size_t i = 0; i < ni; ++i) binary[c][i] = matrix.counts[c][i] > 0.0;
        }
    } else {
        std::vector<double> row_sum(nc, 0.0), col_sum(ni, 0.0);
        double total = 0.0;
        for (std::size_t c = 0; c < nc; ++c) {
            for (std::size_t i = 0; i < ni; ++i) {
                row_sum[c] += matrix.counts[c][i];
                col_sum[i] += matrix.counts[c][i];
                total += matrix.counts[c][i];
            }
        }
        for (std::size_t c = 0; c < nc; ++c) {
            for (std::size_t i = 0; i < ni; ++i) {
                if (matrix.counts[c][i] <= 0.0 || row_sum[c] <= 0.0 || col_sum[i] <= 0.0)
                    continue;
                double rca = (matrix.counts[c][i] / row_sum[c]) / (col_sum[i] / total);
                binary[c][i] = rca >= rca_threshold;
            }
        }
    }

    // Prune zero rows/columns until none remain.
    std::vector<bool> keep_row(nc, true), keep_col(ni, true);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t c = 0; c < nc; ++c) {
            if (!keep_row[c]) continue;
            bool any = false;
            for (std::size_t i = 0; i < ni; ++i) {
                if (keep_col[i] && binary[c][i]) any = true;
            }
            if (!any) {
                keep_row[c] = false;
                changed = true;
            }
        }
        for (std::size_t i = 0; i < ni; ++i) {
            if (!keep_col[i]) continue;
            bool any = false;
            for (std::size_t c = 0; c < nc; ++c) {
                if (keep_row[c] && binary[c][i]) any = true;
            }
            if (!any) {
                keep_col[i] = false;
                changed = true;
            }
        }
    }

    ClusterIndustryMatrix out;
    if (mode == BinarizeMode::Presence) {
        out.binarization = "presence";
    } else {
        std::ostringstream label;
        label << "rca(" << rca_threshold << ")";
        out.binarization = label.str();
    }
    for (std::size_t c = 0; c < nc; ++c) {
        if (keep_row[c]) out.cluster_ids.push_back(matrix.cluster_ids[c]);
    }
    for (std::size_t i = 0; i < ni; ++i) {
        if (keep_col[i]) out.industries.push_back(matrix.industries[i]);
    }
    if (out.cluster_ids.empty() || out.industries.empty()) {
        throw ComplexityError("AllPruned", "binarization left no nonzero rows/columns");
    }
    for (std::size_t c = 0; c < nc; ++c) {
        if (!keep_row[c]) continue;
        std::vector<double> crow;
        std::vector<int> brow;
        for (std::size_t i = 0; i < ni; ++i) {
            if (!keep_col[i]) continue;
            crow.push_back(matrix.counts[c][i]);
            brow.push_back(binary[c][i]);
        }
        out.counts.push_back(std::move(crow));
        out.binary.push_back(std::move(brow));
    }
    return out;
}

std::map<long long, int> diversity(const ClusterIndustryMatrix& matrix) {
    require_binary(matrix);
    std::map<long long, int> result;
    for (std::size_t c = 0; c < matrix.n_clusters(); ++c) {
        result[matrix.cluster_ids[c]] =
            std::accumulate(matrix.binary[c].begin(), matrix.binary[c].end(), 0);
    }
    return result;
}

ComplexityScores eci_reflections(const ClusterIndustryMatrix& matrix, int max_iter,
                                 double tol) {
    require_binary(matrix);
    ComplexityScores scores;
    ClusterIndustryMatrix m = largest_component(matrix, scores.excluded_clusters);

    std::size_t nc = m.n_clusters();
    std::size_t ni = m.n_industries();

    std::vector<double> kc0(nc, 0.0), ki0(ni, 0.0);
    for (std::size_t c = 0; c < nc; ++c) {
        for (std::size_t i = 0; i < ni; ++i) {
            kc0[c] += m.binary[c][i];
            ki0[i] += m.binary[c][i];
        }
    }

    // The iterate's spread around its mean contracts geometrically, so a
    // long run would underflow into rank noise. Recentring and rescaling
    // each step is an affine change that the final standardization removes,
    // but it keeps the direction of the iterate numerically exact.
    auto renormalize = [](std::vector<double>& v) {
        double m0 = stats::mean(v);
        double ss = 0.0;
        for (double x : v) ss += (x - m0) * (x - m0);
        double sd = std::sqrt(ss / static_cast<double>(v.size()));
        if (sd < 1e-14) return false;
        for (double& x : v) x = (x - m0) / sd;
        return true;
    };

    std::vector<double> kc = kc0, ki = ki0;
    std::vector<double> kc_prev2 = kc, kc_prev = kc;
    int iterations = 0;
    bool converged = false;
    for (int n = 1; n <= max_iter; ++n) {
        std::vector<double> kc_next(nc, 0.0), ki_next(ni, 0.0);
        for (std::size_t c = 0; c < nc; ++c) {
            double sum = 0.0;
            for (std::size_t i = 0; i < ni; ++i) {
                if (m.binary[c][i]) sum += ki[i];
            }
            kc_next[c] = sum / kc0[c];
        }
        for (std::size_t i = 0; i < ni; ++i) {
            double sum = 0.0;
            for (std::size_t c = 0; c < nc; ++c) {
                if (m.binary[c][i]) sum += kc[c];
            }
            ki_next[i] = sum / ki0[i];
        }
        bool kc_scaled = renormalize(kc_next);
        if (!kc_scaled) {
            throw ComplexityError("DegenerateVariance",
                                  "cluster scores collapsed at iteration " +
                                      std::to_string(n));
        }
        renormalize(ki_next);
        kc_prev2 = std::move(kc_prev);
        kc_prev = std::move(kc);
        kc = std::move(kc_next);
        ki = std::move(ki_next);
        iterations = n;

        // From n = 3 onwards both same-parity iterates were renormalized
        // inside the loop (the n = 2 comparison would run against the raw
        // initial vector).
        if (n >= 3) {
            // Same-parity comparison: reflections oscillate between
            // diversity-like and ubiquity-like iterates, and two steps apart
            // the iterate advances one application of the similarity map.
            // Rank stability alone can hold long before the direction has
            // settled, so convergence is the Pearson correlation of the
            // normalized iterates instead.
            double dot = 0.0;
            for (std::size_t c = 0; c < nc; ++c) dot += kc[c] * kc_prev2[c];
            double corr = dot / static_cast<double>(nc);
            if (corr >= 1.0 - tol) {
                converged = true;
                break;
            }
        }
    }

    std::vector<double> div_d(kc0.begin(), kc0.end());
    standardize(kc);
    orient_sign(kc, div_d);
    standardize(ki);

    for (std::size_t c = 0; c < nc; ++c) {
        scores.eci_raw[m.cluster_ids[c]] = kc[c];
        scores.diversity[m.cluster_ids[c]] = static_cast<int>(kc0[c]);
    }
    for (std::size_t i = 0; i < ni; ++i) {
        scores.industry_complexity[m.industries[i]] = ki[i];
        scores.ubiquity[m.industries[i]] = static_cast<int>(ki0[i]);
    }
    scores.iterations_used = iterations;
    scores.converged = converged;
    if (scores.eci_raw.size() >= 2) scores.eci_rescaled = rescale(scores.eci_raw);
    return scores;
}

std::map<long long, double> eci_eigen(const ClusterIndustryMatrix& matrix) {
    require_binary(matrix);
    std::vector<long long> excluded;
    ClusterIndustryMatrix m = largest_component(matrix, excluded);

    std::size_t nc = m.n_clusters();
    std::size_t ni = m.n_industries();
    std::vector<double> kc0(nc, 0.0), ki0(ni, 0.0);
    for (std::size_t c = 0; c < nc; ++c) {
        for (std::size_t i = 0; i < ni; ++i) {
            kc0[c] += m.binary[c][i];
            ki0[i] += m.binary[c][i];
        }
    }

    Eigen::MatrixXd similarity = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nc),
                                                       static_cast<Eigen::Index>(nc));
    for (std::size_t c = 0; c < nc; ++c) {
        for (std::size_t d = 0; d < nc; ++d) {
            double sum = 0.0;
            for (std::size_t i = 0; i < ni; ++i) {
                if (m.binary[c][i] && m.binary[d][i]) sum += 1.0 / ki0[i];
            }
            similarity(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(d)) =
                sum / kc0[c];
        }
    }

    Eigen::EigenSolver<Eigen::MatrixXd> solver(similarity);
    std::vector<std::size_t> order(nc);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto eigenvalues = solver.eigenvalues();
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return eigenvalues[static_cast<Eigen::Index>(a)].real() >
               eigenvalues[static_cast<Eigen::Index>(b)].real();
    });
    if (nc < 2) throw ComplexityError("DegenerateVariance", "fewer than two clusters");
    double lambda2 = eigenvalues[static_cast<Eigen::Index>(order[1])].real();
    // Rank-one similarity (all clusters identical) has no informative
    // second direction; a second eigenvalue at 1 means a disconnected or
    // degenerate top eigenspace.
    if (lambda2 < 1e-10 || lambda2 > 1.0 - 1e-10) {
        throw ComplexityError("DegenerateVariance",
                              "second eigenvalue " + std::to_string(lambda2));
    }

    auto column = solver.eigenvectors().col(static_cast<Eigen::Index>(order[1]));
    std::vector<double> scores(nc);
    for (std::size_t c = 0; c < nc; ++c) {
        scores[c] = column[static_cast<Eigen::Index>(c)].real();
    }
    standardize(scores);
    orient_sign(scores, kc0);

    std::map<long long, double> result;
    for (std::size_t c = 0; c < nc; ++c) result[m.cluster_ids[c]] = scores[c];
    return result;
}

std::map<long long, double> rescale(const std::map<long long, double>& raw) {
    if (raw.size() < 2) {
        throw ComplexityError("DegenerateVariance", "rescale needs >= 2 scores");
    }
    double lo = raw.begin()->second, hi = raw.begin()->second;
    for (const auto& [id, v] : raw) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi <= lo) {
        throw ComplexityError("DegenerateVariance", "all raw scores equal in rescale basis");
    }
    std::map<long long, double> out;
    for (const auto& [id, v] : raw) out[id] = 100.0 * (v - lo) / (hi - lo);
    return out;
}

void write_complexity_csv(const std::string& path, const std::string& metadata_path,
                          const ComplexityScores& scores,
                          const ClusterIndustryMatrix& matrix,
                          const std::vector<Cluster>& clusters) {
    std::unordered_map<long long, const Cluster*> by_id;
    for (const auto& c : clusters) by_id[c.cluster_id] = &c;

    std::ofstream out(path);
    if (!out) throw ComplexityError("FileNotWritable", "cannot write " + path);
    out.precision(17);
    out << "cluster_id,year,eci_raw,eci_rescaled,diversity,n_shops\n";
    for (const auto& [id, raw] : scores.eci_raw) {
        const Cluster* c = by_id.count(id) ? by_id.at(id) : nullptr;
        out << id << ',' << (c ? c->year : 0) << ',' << raw << ','
            << scores.eci_rescaled.at(id) << ',' << scores.diversity.at(id) << ','
            << (c ? c->member_ids.size() : 0) << '\n';
    }

    nlohmann::ordered_json meta;
    meta["binarization"] = matrix.binarization;
    meta["iterations_used"] = scores.iterations_used;
    meta["converged"] = scores.converged;
    meta["excluded_clusters"] = scores.excluded_clusters;
    std::ofstream meta_out(metadata_path);
    if (!meta_out) throw ComplexityError("FileNotWritable", "cannot write " + metadata_path);
    meta_out << meta.dump(2) << '\n';
}

}  // namespace citycomplex
