#include "citycomplex/ols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "citycomplex/errors.hpp"

namespace citycomplex {

SeType se_type_from_string(const std::string& name) {
    if (name == "HC1" || name == "hc1") return SeType::HC1;
    if (name == "HC0" || name == "hc0") return SeType::HC0;
    if (name == "classical") return SeType::Classical;
    throw RegressionError("BadSeType", "unknown se_type '" + name + "'");
}

std::string to_string(SeType t) {
    switch (t) {
        case SeType::HC1: return "HC1";
        case SeType::HC0: return "HC0";
        case SeType::Classical: return "classical";
    }
    return "HC1";
}

std::string star_codes(double p) {
    if (p < 0.01) return "***";
    if (p < 0.05) return "**";
    if (p < 0.1) return "*";
    return "";
}

const CoefEntry* RegressionResult::find(const std::string& term) const {
    for (const auto& c : coefficients) {
        if (c.term == term) return &c;
    }
    return nullptr;
}

RegressionResult fit_ols_design(const std::vector<double>& y,
                                const std::vector<std::vector<double>>& columns,
                                const std::vector<std::string>& names,
                                SeType se_type) {
    const std::size_t n = y.size();
    const std::size_t p = columns.size();  // regressors, intercept excluded
    if (names.size() != p) throw RegressionError("BadInput", "names/columns size mismatch");
    for (const auto& col : columns) {
        if (col.size() != n) throw RegressionError("BadInput", "column length mismatch");
    }
    const std::size_t k = p + 1;  // parameters including intercept
    if (n < k) {
        throw RegressionError("InsufficientRows",
                              "n=" + std::to_string(n) + " with " + std::to_string(k) +
                                  " parameters");
    }

    Eigen::MatrixXd X(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
    Eigen::VectorXd Y(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        Y[static_cast<Eigen::Index>(i)] = y[i];
        for (std::size_t j = 0; j < p; ++j) {
            X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = columns[j][i];
        }
        X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(p)) = 1.0;
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(1e-10);
    if (qr.rank() < static_cast<Eigen::Index>(k)) {
        // Name the columns past the numerical rank in pivot order.
        std::string offenders;
        auto perm = qr.colsPermutation().indices();
        for (Eigen::Index j = qr.rank(); j < static_cast<Eigen::Index>(k); ++j) {
            std::size_t col = static_cast<std::size_t>(perm[j]);
            if (!offenders.empty()) offenders += ", ";
            offenders += col < p ? names[col] : "(Intercept)";
        }
        throw RegressionError("RankDeficient", "dependent columns: " + offenders);
    }

    Eigen::VectorXd beta = qr.solve(Y);
    Eigen::VectorXd resid = Y - X * beta;

    double rss = resid.squaredNorm();
    double y_mean = Y.mean();
    double tss = (Y.array() - y_mean).square().sum();
    double r2 = tss > 0.0 ? 1.0 - rss / tss : 0.0;
    double nn = static_cast<double>(n);
    double pp = static_cast<double>(p);
    long long df2 = static_cast<long long>(n - k);
    double adj_r2 = df2 > 0 ? 1.0 - (1.0 - r2) * (nn - 1.0) / (nn - pp - 1.0) : r2;
    double sigma2 = df2 > 0 ? rss / static_cast<double>(df2) : 0.0;

    Eigen::MatrixXd xtx_inv =
        (X.transpose() * X).ldlt().solve(Eigen::MatrixXd::Identity(
            static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)));

    Eigen::MatrixXd cov;
    if (se_type == SeType::Classical) {
        cov = sigma2 * xtx_inv;
    } else {
        Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k),
                                                     static_cast<Eigen::Index>(k));
        for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) {
            Eigen::VectorXd xi = X.row(i).transpose();
            meat += resid[i] * resid[i] * xi * xi.transpose();
        }
        cov = xtx_inv * meat * xtx_inv;
        if (se_type == SeType::HC1 && df2 > 0) {
            cov *= nn / (nn - static_cast<double>(k));
        }
    }

    RegressionResult result;
    result.n = static_cast<long long>(n);
    result.r_squared = r2;
    result.adj_r_squared = adj_r2;
    result.residual_se = std::sqrt(sigma2);
    result.df_residual = df2;
    result.se_type = se_type;

    for (std::size_t j = 0; j <= p; ++j) {
        CoefEntry entry;
        entry.term = j < p ? names[j] : "(Intercept)";
        entry.estimate = beta[static_cast<Eigen::Index>(j)];
        entry.se = std::sqrt(cov(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)));
        if (df2 > 0 && entry.se > 0.0) {
            boost::math::students_t t_dist(static_cast<double>(df2));
            entry.t = entry.estimate / entry.se;
            entry.p =
                2.0 * boost::math::cdf(boost::math::complement(t_dist, std::abs(entry.t)));
        } else {
            // Saturated fit: no residual degrees of freedom for inference.
            entry.t = 0.0;
            entry.p = 1.0;
        }
        entry.stars = star_codes(entry.p);
        result.coefficients.push_back(std::move(entry));
    }

    // Classical overall F, matching the usual printed footer.
    result.f_df1 = static_cast<long long>(p);
    result.f_df2 = df2;
    if (r2 < 1.0 && p > 0 && df2 > 0) {
        result.f_statistic = (r2 / pp) / ((1.0 - r2) / (nn - pp - 1.0));
        boost::math::fisher_f f_dist(pp, nn - pp - 1.0);
        result.f_p_value =
            boost::math::cdf(boost::math::complement(f_dist, result.f_statistic));
    } else {
        result.f_statistic = std::numeric_limits<double>::infinity();
        result.f_p_value = 0.0;
    }
    return result;
}

}  // namespace citycomplex
