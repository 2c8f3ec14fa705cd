#include "citycomplex/table.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

#include "citycomplex/csv.hpp"
#include "citycomplex/errors.hpp"

namespace citycomplex {

namespace {

std::string thousands(long long v) {
    std::string digits = std::to_string(v);
    std::string out;
    int count = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        if (count && count % 3 == 0) out.push_back(',');
        out.push_back(*it);
        ++count;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::string fixed3(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << v;
    return os.str();
}

}  // namespace

std::string render_table(const std::vector<RegressionResult>& results,
                         const std::string& title) {
    // Row order: first appearance across models, intercept last.
    std::vector<std::string> row_order;
    for (const auto& r : results) {
        for (const auto& c : r.coefficients) {
            if (c.term == "(Intercept)") continue;
            if (std::find(row_order.begin(), row_order.end(), c.term) == row_order.end()) {
                row_order.push_back(c.term);
            }
        }
    }
    row_order.push_back("(Intercept)");

    const std::size_t label_width = 32;
    const std::size_t col_width = 22;
    std::ostringstream os;
    auto pad = [&](const std::string& s, std::size_t w) {
        return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
    };

    if (!title.empty()) os << title << '\n';
    std::string rule(label_width + col_width * results.size(), '=');
    os << rule << '\n';
    os << pad("", label_width);
    for (std::size_t i = 0; i < results.size(); ++i) {
        os << pad("(" + std::to_string(i + 1) + ") " + results[i].model, col_width);
    }
    os << '\n' << std::string(rule.size(), '-') << '\n';

    for (const auto& term : row_order) {
        std::string est_line = pad(term == "(Intercept)" ? "Intercept" : term, label_width);
        std::string se_line = pad("", label_width);
        for (const auto& r : results) {
            const CoefEntry* c = r.find(term);
            est_line += pad(c ? fixed3(c->estimate) + c->stars : "", col_width);
            se_line += pad(c ? "(" + fixed3(c->se) + ")" : "", col_width);
        }
        os << est_line << '\n' << se_line << '\n';
    }

    os << std::string(rule.size(), '-') << '\n';
    os << pad("Observations", label_width);
    for (const auto& r : results) os << pad(thousands(r.n), col_width);
    os << '\n' << pad("Adjusted R2", label_width);
    for (const auto& r : results) os << pad(fixed3(r.adj_r_squared), col_width);
    os << '\n' << pad("Residual Std. Error", label_width);
    for (const auto& r : results) {
        os << pad(fixed3(r.residual_se) + " (df = " + thousands(r.df_residual) + ")",
                  col_width);
    }
    os << '\n' << pad("F Statistic", label_width);
    for (const auto& r : results) {
        os << pad(fixed3(r.f_statistic) + star_codes(r.f_p_value) + " (df = " +
                      std::to_string(r.f_df1) + "; " + thousands(r.f_df2) + ")",
                  col_width);
    }
    os << '\n' << rule << '\n';
    os << "Note: " << to_string(results.empty() ? SeType::HC1 : results[0].se_type)
       << " standard errors in parentheses; *p<0.1; **p<0.05; ***p<0.01\n";
    return os.str();
}

void write_regression_csv(const std::string& path,
                          const std::vector<RegressionResult>& results) {
    std::vector<std::vector<std::string>> rows;
    auto fmt = [](double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        return os.str();
    };
    for (const auto& r : results) {
        for (const auto& c : r.coefficients) {
            rows.push_back({r.model, c.term, fmt(c.estimate), fmt(c.se), fmt(c.t), fmt(c.p),
                            c.stars, std::to_string(r.n), fmt(r.adj_r_squared),
                            fmt(r.residual_se), std::to_string(r.df_residual),
                            fmt(r.f_statistic), std::to_string(r.f_df1),
                            std::to_string(r.f_df2), to_string(r.se_type)});
        }
    }
    csv::write_file(path,
                    {"model", "term", "estimate", "se", "t", "p", "stars", "n", "adj_r2",
                     "residual_se", "df_residual", "f", "f_df1", "f_df2", "se_type"},
                    rows);
}

std::vector<RegressionResult> read_regression_csv(const std::string& path) {
    csv::Table table = csv::read_file(path);
    auto col = [&](const std::string& name) {
        auto idx = table.column(name);
        if (!idx) throw RegressionError("MissingColumn", path + " lacks '" + name + "'");
        return *idx;
    };
    std::size_t c_model = col("model"), c_term = col("term"), c_est = col("estimate"),
                c_se = col("se"), c_t = col("t"), c_p = col("p"), c_stars = col("stars"),
                c_n = col("n"), c_adj = col("adj_r2"), c_rse = col("residual_se"),
                c_dfr = col("df_residual"), c_f = col("f"), c_f1 = col("f_df1"),
                c_f2 = col("f_df2"), c_setype = col("se_type");

    std::vector<RegressionResult> results;
    std::map<std::string, std::size_t> by_model;
    std::size_t row_number = 1;
    for (const auto& row : table.rows) {
        ++row_number;
        auto it = by_model.find(row[c_model]);
        if (it == by_model.end()) {
            RegressionResult r;
            r.model = row[c_model];
            r.n = csv::parse_int(row[c_n], row_number);
            r.adj_r_squared = csv::parse_double(row[c_adj], row_number);
            r.residual_se = csv::parse_double(row[c_rse], row_number);
            r.df_residual = csv::parse_int(row[c_dfr], row_number);
            r.f_statistic = csv::parse_double(row[c_f], row_number);
            r.f_df1 = csv::parse_int(row[c_f1], row_number);
            r.f_df2 = csv::parse_int(row[c_f2], row_number);
            r.se_type = se_type_from_string(row[c_setype]);
            results.push_back(std::move(r));
            it = by_model.emplace(row[c_model], results.size() - 1).first;
        }
        CoefEntry entry;
        entry.term = row[c_term];
        entry.estimate = csv::parse_double(row[c_est], row_number);
        entry.se = csv::parse_double(row[c_se], row_number);
        entry.t = csv::parse_double(row[c_t], row_number);
        entry.p = csv::parse_double(row[c_p], row_number);
        entry.stars = row[c_stars];
        results[it->second].coefficients.push_back(std::move(entry));
    }
    return results;
}

}  // namespace citycomplex
