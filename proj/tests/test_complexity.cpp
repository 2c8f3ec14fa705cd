#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "citycomplex/complexity.hpp"
#include "citycomplex/errors.hpp"
#include "citycomplex/rng.hpp"
#include "citycomplex/stats.hpp"
#include "helpers.hpp"

using namespace citycomplex;

namespace {

ClusterIndustryMatrix make_counts(const std::vector<std::vector<double>>& counts) {
    ClusterIndustryMatrix m;
    m.counts = counts;
    for (std::size_t c = 0; c < counts.size(); ++c) {
        m.cluster_ids.push_back(static_cast<long long>(c + 1));
    }
    for (std::size_t i = 0; i < counts[0].size(); ++i) {
        m.industries.push_back("ind" + std::to_string(i + 1));
    }
    return m;
}

ClusterIndustryMatrix make_binary(const std::vector<std::vector<int>>& binary) {
    std::vector<std::vector<double>> counts(binary.size());
    for (std::size_t c = 0; c < binary.size(); ++c) {
        counts[c].assign(binary[c].begin(), binary[c].end());
    }
    return binarize(make_counts(counts), BinarizeMode::Presence);
}

std::vector<double> scores_in_id_order(const std::map<long long, double>& scores) {
    std::vector<double> out;
    for (const auto& [id, v] : scores) out.push_back(v);
    return out;
}

}  // namespace

TEST_CASE("matrix: member stores are counted per industry") {
    // One cluster with stores in retail/a (x2) and food/b (x1).
    std::vector<StorePoint> stores = {testutil::store_at(1, 0, 0, "retail/a"),
                                      testutil::store_at(2, 10, 0, "retail/a"),
                                      testutil::store_at(3, 20, 0, "food/b")};
    Cluster cluster;
    cluster.cluster_id = 1;
    cluster.member_ids = {1, 2, 3};
    auto m = build_matrix({cluster}, stores, CategoryDepth::Subcategory);
    REQUIRE(m.n_clusters() == 1);
    REQUIRE(m.n_industries() == 2);
    std::vector<double> row = m.counts[0];
    std::sort(row.begin(), row.end());
    CHECK(row == std::vector<double>{1.0, 2.0});

    auto coarse = build_matrix({cluster}, stores, CategoryDepth::Primary);
    CHECK(coarse.n_industries() == 2);  // retail, food
}

TEST_CASE("matrix: empty clusters are skipped with a warning") {
    std::vector<StorePoint> stores = {testutil::store_at(1, 0, 0, "retail/a")};
    Cluster full, empty;
    full.cluster_id = 1;
    full.member_ids = {1};
    empty.cluster_id = 2;
    std::vector<std::string> warnings;
    auto m = build_matrix({full, empty}, stores, CategoryDepth::Subcategory, &warnings);
    CHECK(m.n_clusters() == 1);
    CHECK_FALSE(warnings.empty());
}

TEST_CASE("binarize: presence ignores magnitudes") {
    auto m = binarize(make_counts({{5, 0.5}, {0, 100}}), BinarizeMode::Presence);
    CHECK(m.binary == std::vector<std::vector<int>>{{1, 1}, {0, 1}});
    CHECK(m.binarization == "presence");

    // Scaling a row never changes presence.
    auto scaled = binarize(make_counts({{50, 5}, {0, 1000}}), BinarizeMode::Presence);
    CHECK(scaled.binary == m.binary);
}

TEST_CASE("binarize: rca share-of-share on the 2x2 example") {
    // counts [[4,1],[1,4]]: rca [[1.6,0.4],[0.4,1.6]] -> identity at threshold 1.
    auto m = binarize(make_counts({{4, 1}, {1, 4}}), BinarizeMode::Rca, 1.0);
    CHECK(m.binary == std::vector<std::vector<int>>{{1, 0}, {0, 1}});
    CHECK(m.binarization == "rca(1)");
}

TEST_CASE("binarize: uniform counts give all-ones rca") {
    auto m = binarize(make_counts({{3, 3}, {3, 3}}), BinarizeMode::Rca, 1.0);
    CHECK(m.binary == std::vector<std::vector<int>>{{1, 1}, {1, 1}});
}

TEST_CASE("binarize: zero rows and columns are pruned iteratively") {
    // Cluster 3 and industry 3 vanish under rca; pruning removes them.
    auto m = binarize(make_counts({{9, 1, 0}, {1, 9, 0}, {1, 1, 0}}), BinarizeMode::Rca, 1.2);
    CHECK(m.cluster_ids == std::vector<long long>{1, 2});
    CHECK(m.industries == std::vector<std::string>{"ind1", "ind2"});

    CHECK_THROWS_WITH_AS(binarize(make_counts({{0, 0}, {0, 0}}), BinarizeMode::Presence),
                         doctest::Contains("AllPruned"), ComplexityError);
}

TEST_CASE("diversity: row sums of the binary matrix") {
    auto m = make_binary({{1, 1, 0, 1}, {1, 0, 0, 0}});
    auto d = diversity(m);
    CHECK(d.at(1) == 3);
    CHECK(d.at(2) == 1);
}

TEST_CASE("reflections: identity matrix has no rank information") {
    auto m = make_binary({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK_THROWS_WITH_AS(eci_reflections(m), doctest::Contains("DegenerateVariance"),
                         ComplexityError);
}

TEST_CASE("reflections: nested matrix ranks clusters by reach") {
    // Perfectly nested: cluster 3 holds everything incl. the rarest industry.
    auto m = make_binary({{1, 0, 0}, {1, 1, 0}, {1, 1, 1}});
    auto scores = eci_reflections(m);
    CHECK(scores.converged);
    CHECK(scores.excluded_clusters.empty());
    CHECK(scores.eci_raw.at(3) > scores.eci_raw.at(2));
    CHECK(scores.eci_raw.at(2) > scores.eci_raw.at(1));
    // Standardized: mean 0, population sd 1.
    auto v = scores_in_id_order(scores.eci_raw);
    CHECK(stats::mean(v) == doctest::Approx(0.0).epsilon(1e-9));
    double var = 0.0;
    for (double x : v) var += x * x;
    CHECK(std::sqrt(var / v.size()) == doctest::Approx(1.0).epsilon(1e-9));
    // Rescaled extremes hit 0 and 100.
    CHECK(scores.eci_rescaled.at(1) == doctest::Approx(0.0));
    CHECK(scores.eci_rescaled.at(3) == doctest::Approx(100.0));
}

TEST_CASE("reflections: sign follows diversity") {
    CounterRng rng(301);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<int>> binary(12, std::vector<int>(8, 0));
        for (auto& row : binary) {
            for (auto& x : row) x = rng.uniform() < 0.45 ? 1 : 0;
            row[rng.uniform_int(8)] = 1;  // no empty rows
        }
        ClusterIndustryMatrix m;
        try {
            m = make_binary(binary);
        } catch (const ComplexityError&) {
            continue;
        }
        ComplexityScores scores;
        try {
            scores = eci_reflections(m);
        } catch (const ComplexityError&) {
            continue;  // degenerate draw
        }
        std::vector<double> eci, div;
        for (long long id : m.cluster_ids) {
            if (scores.eci_raw.count(id)) {
                eci.push_back(scores.eci_raw.at(id));
                div.push_back(scores.diversity.at(id));
            }
        }
        if (eci.size() < 3) continue;
        try {
            CHECK(stats::pearson(eci, div) >= -1e-12);
        } catch (const RegressionError&) {
            // constant diversity: orientation is unconstrained
        }
    }
}

TEST_CASE("eigen: agrees with reflections on the nested matrix") {
    auto m = make_binary({{1, 0, 0}, {1, 1, 0}, {1, 1, 1}});
    auto eig = eci_eigen(m);
    auto refl = eci_reflections(m);
    CHECK(eig.at(3) > eig.at(2));
    CHECK(eig.at(2) > eig.at(1));
    std::vector<double> a = scores_in_id_order(eig);
    std::vector<double> b = scores_in_id_order(refl.eci_raw);
    CHECK(stats::spearman(a, b) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("eigen: all-ones matrix is degenerate") {
    auto m = make_binary({{1, 1}, {1, 1}});
    CHECK_THROWS_WITH_AS(eci_eigen(m), doctest::Contains("DegenerateVariance"),
                         ComplexityError);
}

TEST_CASE("reflections vs eigen: high rank agreement on random matrices") {
    CounterRng rng(303);
    int done = 0;
    int attempts = 0;
    while (done < 10 && attempts < 200) {
        ++attempts;
        std::vector<std::vector<int>> binary(50, std::vector<int>(20, 0));
        for (std::size_t c = 0; c < binary.size(); ++c) {
            // Triangular-ish fill keeps the bipartite graph connected and
            // the score distribution non-degenerate.
            double reach = 0.2 + 0.8 * static_cast<double>(c) / binary.size();
            for (std::size_t i = 0; i < binary[c].size(); ++i) {
                double p = reach * (1.2 - static_cast<double>(i) / binary[c].size());
                binary[c][i] = rng.uniform() < p ? 1 : 0;
            }
            binary[c][rng.uniform_int(20)] = 1;
        }
        ComplexityScores refl;
        std::map<long long, double> eig;
        ClusterIndustryMatrix m;
        try {
            m = make_binary(binary);
            refl = eci_reflections(m);
            eig = eci_eigen(m);
        } catch (const ComplexityError&) {
            continue;
        }
        if (!refl.excluded_clusters.empty()) continue;
        std::vector<double> a = scores_in_id_order(refl.eci_raw);
        std::vector<double> b = scores_in_id_order(eig);
        REQUIRE(a.size() == b.size());
        CHECK(std::abs(stats::spearman(a, b)) >= 0.99);
        ++done;
    }
    CHECK(done == 10);
}

TEST_CASE("reflections: scores are equivariant under row permutation") {
    auto base = make_binary({{1, 1, 0, 0}, {1, 1, 1, 0}, {1, 0, 1, 1}, {0, 1, 1, 1},
                             {1, 1, 1, 1}});
    auto scores = eci_reflections(base);

    // Same rows, shuffled, with shuffled cluster ids.
    ClusterIndustryMatrix shuffled = base;
    std::vector<std::size_t> perm = {3, 0, 4, 1, 2};
    for (std::size_t r = 0; r < perm.size(); ++r) {
        shuffled.cluster_ids[r] = base.cluster_ids[perm[r]];
        shuffled.counts[r] = base.counts[perm[r]];
        shuffled.binary[r] = base.binary[perm[r]];
    }
    auto scores2 = eci_reflections(shuffled);
    for (long long id : base.cluster_ids) {
        CHECK(scores2.eci_raw.at(id) == doctest::Approx(scores.eci_raw.at(id)).epsilon(1e-9));
    }
}

TEST_CASE("reflections: duplicating an industry column barely moves the ranking") {
    auto base = make_binary({{1, 1, 0, 0}, {1, 1, 1, 0}, {1, 0, 1, 1}, {0, 1, 1, 1},
                             {1, 1, 1, 1}});
    auto scores = eci_reflections(base);

    // Not an exact invariance: the copy reweights the cluster-side averages.
    ClusterIndustryMatrix doubled = base;
    doubled.industries.push_back("ind2_copy");
    for (std::size_t r = 0; r < doubled.binary.size(); ++r) {
        doubled.binary[r].push_back(doubled.binary[r][1]);
        doubled.counts[r].push_back(doubled.counts[r][1]);
    }
    auto scores2 = eci_reflections(doubled);
    std::vector<double> a = scores_in_id_order(scores.eci_raw);
    std::vector<double> b = scores_in_id_order(scores2.eci_raw);
    CHECK(stats::spearman(a, b) >= 0.9);
}

TEST_CASE("rescale: affine map onto the unit-hundred range") {
    std::map<long long, double> raw = {{1, -1.0}, {2, 0.0}, {3, 1.0}};
    auto scaled = rescale(raw);
    CHECK(scaled.at(1) == doctest::Approx(0.0));
    CHECK(scaled.at(2) == doctest::Approx(50.0));
    CHECK(scaled.at(3) == doctest::Approx(100.0));

    std::map<long long, double> flat = {{1, 2.0}, {2, 2.0}};
    CHECK_THROWS_WITH_AS(rescale(flat), doctest::Contains("DegenerateVariance"),
                         ComplexityError);
}

TEST_CASE("reflections: disconnected components are excluded, not scored") {
    // Two blocks with no shared industries: {1,2,3} vs {4,5}.
    auto m = make_binary({{1, 1, 0, 0, 0},
                          {1, 1, 1, 0, 0},
                          {0, 1, 1, 0, 0},
                          {0, 0, 0, 1, 1},
                          {0, 0, 0, 1, 0}});
    auto scores = eci_reflections(m);
    CHECK(scores.excluded_clusters == std::vector<long long>{4, 5});
    CHECK(scores.eci_raw.count(4) == 0);
    CHECK(scores.eci_raw.count(1) == 1);
}
