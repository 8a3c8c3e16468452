#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "econet/mlr.hpp"
#include "econet/stats.hpp"
#include "econet/synth.hpp"

using namespace econet;

namespace {

IndicatorId id_of(const std::string& text) { return IndicatorId::parse(text); }

/// Small panel: one planted relation I1(t+1) = 0.7 I2(t) + 5e8, two
/// independent driver series, 10 years (9 samples).
std::vector<PanelRecord> planted_records(std::uint64_t seed, double noise) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int y0 = 2002, y1 = 2011;
    std::vector<double> driver, other;
    for (int y = y0; y <= y1; ++y) {
        driver.push_back(1e9 * std::exp(0.6 * gauss(rng)));
        other.push_back(2e9 * std::exp(0.6 * gauss(rng)));
    }
    std::vector<PanelRecord> records;
    const double scale = 0.7 * 1e9;
    for (int y = y0; y <= y1; ++y) {
        const int t = y - y0;
        records.push_back({id_of("AAA:goods:in"), y,
                           t == 0 ? scale
                                  : 0.7 * driver[t - 1] + 5e8 + noise * scale * gauss(rng)});
        records.push_back({id_of("BBB:fdi:out"), y, driver[t]});
        records.push_back({id_of("CCC:equity:out"), y, other[t]});
    }
    return records;
}

}  // namespace

TEST_CASE("stepwise_fit recovers a planted one-regressor relation") {
    const IndicatorPanel panel = build_panel(planted_records(77, 0.001)).panel;
    const int regressand = *panel.index_of(id_of("AAA:goods:in"));
    const RowFit row = stepwise_fit(panel, regressand, FitCriteria{});
    REQUIRE(row.status == RowStatus::accepted);
    REQUIRE(row.terms.size() == 1);
    CHECK(panel.indicators()[row.terms[0].regressor].str() == "BBB:fdi:out");
    CHECK(row.terms[0].beta == doctest::Approx(0.7).epsilon(0.03));
    CHECK(std::fabs(row.terms[0].beta - 0.7) <= 0.02);
    CHECK(row.intercept == doctest::Approx(5e8).epsilon(0.1));
    CHECK(row.sample_count == 9);
}

TEST_CASE("a pure-noise regressand is rejected in nearly all seeded trials") {
    int rejected = 0;
    const int trials = 200;
    for (int s = 0; s < trials; ++s) {
        PanelSynthSpec spec;
        spec.indicators = 20;
        spec.years = 10;
        spec.relations = 10;
        spec.noise_regressands = 1;
        const PanelSynthResult synth = synth_panel(spec, 5000 + s);
        const IndicatorPanel panel = build_panel(synth.records).panel;
        const RowFit row = stepwise_fit(panel, *panel.index_of(synth.noise_ids[0]), FitCriteria{});
        if (row.status != RowStatus::accepted) ++rejected;
    }
    CHECK(rejected >= 0.95 * trials);
}

TEST_CASE("the VIF bound forces a single regressor out of a collinear pair") {
    // I1(t+1) = I2(t) + I3(t) with corr(I2, I3) ~ 0.999.
    std::mt19937_64 rng(13);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int y0 = 2002, y1 = 2012;
    std::vector<double> base;
    for (int y = y0; y <= y1; ++y) base.push_back(1e9 * std::exp(0.5 * gauss(rng)));
    std::vector<PanelRecord> records;
    std::vector<double> twin;
    for (std::size_t t = 0; t < base.size(); ++t) {
        twin.push_back(base[t] * (1.0 + 0.01 * gauss(rng)));
    }
    for (int y = y0; y <= y1; ++y) {
        const int t = y - y0;
        records.push_back({id_of("BBB:fdi:out"), y, base[t]});
        records.push_back({id_of("CCC:fdi:out"), y, twin[t]});
        records.push_back(
            {id_of("AAA:goods:in"), y, t == 0 ? 2e9 : base[t - 1] + twin[t - 1]});
    }
    const IndicatorPanel panel = build_panel(records).panel;

    // confirm the planted collinearity with the vif oracle
    Eigen::MatrixXd pair(base.size(), 2);
    for (std::size_t t = 0; t < base.size(); ++t) {
        pair(t, 0) = base[t];
        pair(t, 1) = twin[t];
    }
    CHECK(vif(pair)[0] > 5.0);

    const RowFit row = stepwise_fit(panel, *panel.index_of(id_of("AAA:goods:in")), FitCriteria{});
    REQUIRE(row.status == RowStatus::accepted);
    CHECK(row.terms.size() == 1);
}

TEST_CASE("the step-1 seed has the minimal residuum and candidates are ordered") {
    const IndicatorPanel panel = build_panel(planted_records(31, 0.001)).panel;
    const RowFit row = stepwise_fit(panel, *panel.index_of(id_of("AAA:goods:in")), FitCriteria{});
    REQUIRE(row.step1.size() == 2);
    CHECK(row.step1[0].slr_ssr <= row.step1[1].slr_ssr);
    REQUIRE(!row.terms.empty());
    // The first retained regressor is the step-1 minimum.
    CHECK(row.terms[0].regressor == row.step1[0].candidate);
}

TEST_CASE("rows with too few years or missing data are unfittable") {
    std::vector<PanelRecord> records;
    for (int y = 2002; y <= 2005; ++y) {
        records.push_back({id_of("AAA:goods:in"), y, 1.0 * (y - 2000)});
        records.push_back({id_of("BBB:fdi:out"), y, 2.0 * (y - 2000)});
    }
    const IndicatorPanel short_panel = build_panel(records).panel;
    const RowFit row = stepwise_fit(short_panel, 0, FitCriteria{});
    CHECK(row.status == RowStatus::unfittable);
    CHECK(row.note.find("insufficient sample") != std::string::npos);
}

TEST_CASE("a single-indicator panel has no candidates") {
    std::vector<PanelRecord> records;
    for (int y = 2002; y <= 2012; ++y) {
        records.push_back({id_of("AAA:goods:in"), y, std::exp(0.1 * (y - 2000))});
    }
    const CoefficientNetwork net = fit_gbopn(build_panel(records).panel, FitCriteria{});
    REQUIRE(net.rows.size() == 1);
    CHECK(net.rows[0].status == RowStatus::unfittable);
    CHECK(net.summary.unfittable == 1);
}

TEST_CASE("fit_gbopn recovers planted relations across the panel") {
    int recovered = 0, total = 0;
    for (int s = 0; s < 3; ++s) {
        PanelSynthSpec spec;  // 40 indicators, 30 relations, 10 years
        const PanelSynthResult synth = synth_panel(spec, 900 + s);
        const IndicatorPanel panel = build_panel(synth.records).panel;
        const CoefficientNetwork net = fit_gbopn(panel, FitCriteria{});
        for (const auto& rel : synth.relations) {
            ++total;
            const RowFit* row = net.row(rel.regressand);
            if (!row || row->status != RowStatus::accepted) continue;
            for (const auto& term : row->terms) {
                if (net.ids[term.regressor] == rel.regressor &&
                    std::fabs(term.beta - rel.beta) <= 0.02) {
                    ++recovered;
                    break;
                }
            }
        }
    }
    CHECK(recovered >= static_cast<int>(0.9 * total));
}

TEST_CASE("accepted rows satisfy every criterion bound under post-hoc audit") {
    const PanelSynthResult synth = synth_panel(PanelSynthSpec{}, 404);
    const IndicatorPanel panel = build_panel(synth.records).panel;
    const FitCriteria criteria{};
    const CoefficientNetwork net = fit_gbopn(panel, criteria);
    REQUIRE(net.summary.accepted > 0);

    const int n = panel.year_count() - 1;
    for (const RowFit& row : net.rows) {
        if (row.status != RowStatus::accepted) continue;
        CHECK(row.row_error <= criteria.max_mean_error);
        CHECK(row.f_pvalue <= criteria.alpha);
        CHECK(static_cast<int>(row.terms.size()) <= row.sample_count - 2);

        // re-fit the stored support and re-check every bound
        Eigen::MatrixXd X(n, row.terms.size());
        Eigen::VectorXd y(n);
        for (int t = 0; t < n; ++t) {
            y[t] = panel.value(row.regressand, panel.first_year() + t + 1);
            for (std::size_t c = 0; c < row.terms.size(); ++c) {
                X(t, c) = panel.value(row.terms[c].regressor, panel.first_year() + t);
            }
        }
        const OlsResult refit = ols_fit(X, y);
        CHECK((refit.t_pvalues.array() <= criteria.alpha).all());
        CHECK(refit.mean_relative_error <= criteria.max_mean_error);
        CHECK(refit.mean_relative_error == doctest::Approx(row.row_error).epsilon(1e-12));
        if (row.terms.size() >= 2) {
            CHECK((vif(X).array() <= criteria.max_vif).all());
            CHECK(condition_number(X) <= criteria.max_condition);
        }
        for (std::size_t c = 0; c < row.terms.size(); ++c) {
            CHECK(refit.coefficients[c] == doctest::Approx(row.terms[c].beta).epsilon(1e-12));
        }
    }
}

TEST_CASE("fitting is deterministic") {
    const PanelSynthResult synth = synth_panel(PanelSynthSpec{}, 55);
    const IndicatorPanel panel = build_panel(synth.records).panel;
    const CoefficientNetwork a = fit_gbopn(panel, FitCriteria{});
    const CoefficientNetwork b = fit_gbopn(panel, FitCriteria{});
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].status == b.rows[i].status);
        REQUIRE(a.rows[i].terms.size() == b.rows[i].terms.size());
        for (std::size_t t = 0; t < a.rows[i].terms.size(); ++t) {
            CHECK(a.rows[i].terms[t].beta == b.rows[i].terms[t].beta);  // bit-identical
        }
        CHECK((std::isnan(a.rows[i].row_error) && std::isnan(b.rows[i].row_error)) ||
              a.rows[i].row_error == b.rows[i].row_error);
    }
}

TEST_CASE("forecast") {
    SUBCASE("a noiseless planted panel forecasts exactly") {
        const IndicatorPanel panel = build_panel(planted_records(12, 0.0)).panel;
        const CoefficientNetwork net = fit_gbopn(panel, FitCriteria{});
        const ForecastReport report = forecast(net, panel, panel.last_year() - 1);
        REQUIRE(!report.rows.empty());
        for (const auto& row : report.rows) {
            REQUIRE(row.rel_error.has_value());
            CHECK(*row.rel_error < 1e-9);
        }
    }
    SUBCASE("holdout leaves the last year for an out-of-sample test") {
        const IndicatorPanel panel = build_panel(planted_records(12, 0.001)).panel;
        const CoefficientNetwork net = fit_gbopn(panel, FitCriteria{}, /*holdout=*/true);
        const ForecastReport report = forecast(net, panel, panel.last_year() - 1);
        for (const auto& row : report.rows) {
            REQUIRE(row.rel_error.has_value());
            CHECK(*row.rel_error < 0.05);
        }
    }
    SUBCASE("1%-noise panels keep the median forecast error under 5%") {
        std::vector<double> errors;
        for (int s = 0; s < 20; ++s) {
            PanelSynthSpec spec;
            spec.noise = 0.01;
            const PanelSynthResult synth = synth_panel(spec, 7000 + s);
            const IndicatorPanel panel = build_panel(synth.records).panel;
            const CoefficientNetwork net = fit_gbopn(panel, FitCriteria{}, true);
            const ForecastReport report = forecast(net, panel, panel.last_year() - 1);
            for (const auto& row : report.rows) {
                if (row.rel_error) errors.push_back(*row.rel_error);
            }
        }
        REQUIRE(!errors.empty());
        std::sort(errors.begin(), errors.end());
        CHECK(errors[errors.size() / 2] < 0.05);
    }
    SUBCASE("from-year outside the panel is an error") {
        const IndicatorPanel panel = build_panel(planted_records(12, 0.0)).panel;
        const CoefficientNetwork net = fit_gbopn(panel, FitCriteria{});
        CHECK_THROWS_AS(forecast(net, panel, 1990), validation_error);
    }
}

TEST_CASE("tracking_centrality") {
    const IndicatorPanel panel = build_panel(planted_records(77, 0.001)).panel;
    const CoefficientNetwork net = fit_gbopn(panel, FitCriteria{});
    const std::vector<double> sizes = time_averaged_sizes(panel);
    const TrackingScore score = tracking_centrality(net, sizes);

    SUBCASE("an indicator tracking nothing scores zero") {
        // CCC drives nothing by construction
        const int ccc = *net.index_of(id_of("CCC:equity:out"));
        bool ccc_has_edge = false;
        for (const auto& e : score.edges) ccc_has_edge |= e.regressor == ccc;
        if (!ccc_has_edge) CHECK(score.centrality[ccc] == 0.0);
    }
    SUBCASE("T_i equals the sum of outbound edge values") {
        std::vector<double> recomputed(net.ids.size(), 0.0);
        for (const auto& e : score.edges) recomputed[e.regressor] += e.value;
        for (std::size_t i = 0; i < recomputed.size(); ++i) {
            CHECK(score.centrality[i] == doctest::Approx(recomputed[i]).epsilon(1e-12));
            CHECK(score.centrality[i] >= 0.0);
        }
    }
    SUBCASE("a single R2=1 edge into a regressand of size S scores exactly S") {
        CoefficientNetwork toy;
        toy.ids = {id_of("AAA:goods:in"), id_of("BBB:fdi:out")};
        RowFit row;
        row.regressand = 0;
        row.status = RowStatus::accepted;
        row.terms = {{1, 0.5, 1.0, 0.001}};
        row.row_error = 0.01;
        toy.rows = {row, RowFit{}};
        toy.rows[1].regressand = 1;
        const std::vector<double> s = {42.0, 7.0};
        const TrackingScore toy_score = tracking_centrality(toy, s);
        CHECK(toy_score.centrality[1] == doctest::Approx(42.0));
        CHECK(toy_score.centrality[0] == 0.0);
    }
    SUBCASE("matches the brute-force double loop") {
        std::vector<double> brute(net.ids.size(), 0.0);
        for (const RowFit& row : net.rows) {
            if (row.status != RowStatus::accepted) continue;
            for (const auto& term : row.terms) {
                brute[term.regressor] += std::sqrt(term.edge_r2) * sizes[row.regressand];
            }
        }
        for (std::size_t i = 0; i < brute.size(); ++i) {
            CHECK(score.centrality[i] == doctest::Approx(brute[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("path_track") {
    // Hand-built accepted network: A -> B -> C plus a direct A -> C edge.
    CoefficientNetwork net;
    net.ids = {id_of("AAA:goods:in"), id_of("BBB:fdi:out"), id_of("CCC:equity:out"),
               id_of("DDD:debt:in")};
    net.rows.resize(4);
    for (int i = 0; i < 4; ++i) net.rows[i].regressand = i;
    auto accept = [&](int regressand, int regressor, double err) {
        net.rows[regressand].status = RowStatus::accepted;
        net.rows[regressand].row_error = err;
        net.rows[regressand].terms.push_back({regressor, 1.0, 0.9, 0.01});
    };
    accept(1, 0, 0.02);  // A -> B, error of row B
    accept(2, 1, 0.03);  // B -> C
    accept(3, 2, 0.045); // C -> D (direct-edge case)

    SUBCASE("a direct edge costs its row error") {
        const PathTrack t = path_track(net, net.ids[2], net.ids[3]);
        REQUIRE(t.found);
        CHECK(t.path.size() == 2);
        CHECK(t.error_bound == doctest::Approx(0.045));
    }
    SUBCASE("source equal to target is an empty path with zero bound") {
        const PathTrack t = path_track(net, net.ids[1], net.ids[1]);
        CHECK(t.found);
        CHECK(t.path.empty());
        CHECK(t.error_bound == 0.0);
    }
    SUBCASE("two-edge path sums both row errors") {
        const PathTrack t = path_track(net, net.ids[0], net.ids[2]);
        REQUIRE(t.found);
        CHECK(t.path.size() == 3);
        CHECK(t.error_bound == doctest::Approx(0.05));
    }
    SUBCASE("no path is reported, not thrown") {
        const PathTrack t = path_track(net, net.ids[3], net.ids[0]);
        CHECK_FALSE(t.found);
    }
    SUBCASE("unknown endpoints are validation errors") {
        CHECK_THROWS_AS(path_track(net, id_of("ZZZ:debt:in"), net.ids[0]), validation_error);
    }
}

TEST_CASE("path_track matches exhaustive enumeration on random accepted networks") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 8;
        CoefficientNetwork net;
        for (int i = 0; i < n; ++i) {
            net.ids.push_back(id_of("C" + std::to_string(i) + ":goods:in"));
        }
        net.rows.resize(n);
        for (int i = 0; i < n; ++i) {
            net.rows[i].regressand = i;
            net.rows[i].row_error = 0.01 + 0.05 * unit(rng);
            net.rows[i].status = RowStatus::accepted;
            for (int j = 0; j < n; ++j) {
                if (i != j && unit(rng) < 0.25) {
                    net.rows[i].terms.push_back({j, 1.0, 0.5, 0.01});
                }
            }
        }
        // exhaustive BFS over (hops, error) in test code
        auto oracle = [&](int src, int dst) {
            std::vector<std::vector<int>> out(n);
            for (const auto& row : net.rows) {
                for (const auto& t : row.terms) out[t.regressor].push_back(row.regressand);
            }
            std::vector<std::pair<int, double>> best(n, {1 << 20, 1e30});
            best[src] = {0, 0.0};
            for (int round = 0; round < n; ++round) {
                for (int v = 0; v < n; ++v) {
                    if (best[v].first > n) continue;
                    for (int w : out[v]) {
                        std::pair<int, double> cand{best[v].first + 1,
                                                    best[v].second + net.rows[w].row_error};
                        if (cand < best[w]) best[w] = cand;
                    }
                }
            }
            return best[dst];
        };
        for (int src = 0; src < n; ++src) {
            for (int dst = 0; dst < n; ++dst) {
                PathTrack got;
                try {
                    got = path_track(net, net.ids[src], net.ids[dst]);
                } catch (const validation_error&) {
                    continue;  // endpoint not in the accepted network
                }
                const auto [hops, err] = oracle(src, dst);
                if (!got.found) {
                    CHECK(hops > n);
                } else if (src != dst) {
                    CHECK(static_cast<int>(got.path.size()) - 1 == hops);
                    CHECK(got.error_bound == doctest::Approx(err).epsilon(1e-9));
                }
            }
        }
    }
}
