#include <doctest.h>

#include <cmath>
#include <random>

#include "econet/panel.hpp"

using namespace econet;

namespace {

IndicatorId id_of(const std::string& text) { return IndicatorId::parse(text); }

std::vector<PanelRecord> grid_records(const std::vector<std::string>& ids, int y0, int y1,
                                      double base) {
    std::vector<PanelRecord> out;
    double v = base;
    for (const auto& id : ids) {
        for (int y = y0; y <= y1; ++y) {
            out.push_back({id_of(id), y, v});
            v *= 1.01;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("indicator ids round-trip through their string form") {
    const IndicatorId id = id_of("USA:debt:in");
    CHECK(id.country == "USA");
    CHECK(id.account == Account::debt);
    CHECK(id.direction == Direction::in);
    CHECK(id.str() == "USA:debt:in");
    CHECK_THROWS_AS(id_of("USA-debt-in"), validation_error);
    CHECK_THROWS_AS(id_of("USA:bonds:in"), validation_error);
}

TEST_CASE("build_panel validates cells and drops thin indicators") {
    SUBCASE("duplicate cells are rejected") {
        const auto id = id_of("DEU:goods:out");
        CHECK_THROWS_WITH_AS(build_panel({{id, 2002, 1.0}, {id, 2002, 2.0}}),
                             doctest::Contains("duplicate cell"), validation_error);
    }
    SUBCASE("indicators with fewer than 3 observed years are dropped") {
        std::vector<PanelRecord> records = grid_records({"DEU:goods:out"}, 2002, 2006, 1e9);
        records.push_back({id_of("FRA:fdi:in"), 2003, 2e9});
        records.push_back({id_of("FRA:fdi:in"), 2004, 3e9});
        const PanelBuildResult built = build_panel(records);
        CHECK(built.panel.indicator_count() == 1);
        REQUIRE(built.dropped.size() == 1);
        CHECK(built.dropped[0].str() == "FRA:fdi:in");
    }
    SUBCASE("missing cells are queryable") {
        std::vector<PanelRecord> records = grid_records({"DEU:goods:out"}, 2002, 2006, 1e9);
        records.push_back({id_of("FRA:fdi:in"), 2002, 1e9});
        records.push_back({id_of("FRA:fdi:in"), 2003, 2e9});
        records.push_back({id_of("FRA:fdi:in"), 2006, 3e9});
        const IndicatorPanel panel = build_panel(records).panel;
        const int fra = *panel.index_of(id_of("FRA:fdi:in"));
        CHECK(panel.has_value(fra, 2003));
        CHECK_FALSE(panel.has_value(fra, 2004));
        CHECK_FALSE(panel.complete_over(fra, 2002, 2006));
        CHECK(panel.complete_over(fra, 2002, 2003));
    }
}

TEST_CASE("deflate_panel") {
    const auto records = grid_records({"DEU:goods:out", "FRA:fdi:in"}, 2002, 2006, 1e9);
    const IndicatorPanel panel = build_panel(records).panel;

    SUBCASE("a constant deflator changes nothing") {
        std::map<int, double> deflator;
        for (int y = 2002; y <= 2006; ++y) deflator[y] = 1.0;
        const IndicatorPanel out = deflate_panel(panel, deflator, 2006);
        for (int i = 0; i < panel.indicator_count(); ++i) {
            for (int y = 2002; y <= 2006; ++y) {
                CHECK(out.value(i, y) == panel.value(i, y));
            }
        }
    }
    SUBCASE("values are scaled by deflator(base)/deflator(t)") {
        std::map<int, double> deflator = {
            {2002, 2.0}, {2003, 1.0}, {2004, 1.0}, {2005, 1.0}, {2006, 1.0}};
        const IndicatorPanel out = deflate_panel(panel, deflator, 2006);
        CHECK(out.value(0, 2002) == doctest::Approx(panel.value(0, 2002) / 2.0));
        CHECK(out.value(0, 2006) == panel.value(0, 2006));  // base year unchanged
    }
    SUBCASE("deflating and inverse-deflating round-trips") {
        std::map<int, double> deflator, inverse;
        double f = 0.8;
        for (int y = 2002; y <= 2006; ++y) {
            deflator[y] = f;
            inverse[y] = 1.0 / f;
            f *= 1.07;
        }
        const IndicatorPanel there = deflate_panel(panel, deflator, 2004);
        // undo by deflating with reciprocal factors and the same base
        const IndicatorPanel back = deflate_panel(there, inverse, 2004);
        for (int i = 0; i < panel.indicator_count(); ++i) {
            for (int y = 2002; y <= 2006; ++y) {
                CHECK(back.value(i, y) ==
                      doctest::Approx(panel.value(i, y)).epsilon(1e-12));
            }
        }
    }
    SUBCASE("a missing deflator year is named") {
        std::map<int, double> deflator = {{2002, 1.0}, {2003, 1.0}};
        CHECK_THROWS_WITH_AS(deflate_panel(panel, deflator, 2002), doctest::Contains("2004"),
                             validation_error);
    }
}

TEST_CASE("select_countries") {
    SUBCASE("one country holding everything is a singleton") {
        const auto records = grid_records({"USA:goods:in"}, 2002, 2005, 1e9);
        const auto selected = select_countries(build_panel(records).panel, 0.95);
        CHECK(selected == std::set<std::string>{"USA"});
    }
    SUBCASE("two equal countries are both needed for 95%") {
        auto records = grid_records({"USA:goods:in"}, 2002, 2005, 1e9);
        auto more = grid_records({"DEU:goods:in"}, 2002, 2005, 1e9);
        records.insert(records.end(), more.begin(), more.end());
        const auto selected = select_countries(build_panel(records).panel, 0.95);
        CHECK(selected == std::set<std::string>{"DEU", "USA"});
    }
    SUBCASE("planted shares match the sort-and-accumulate oracle") {
        // 10 countries with geometric shares of one indicator class.
        std::mt19937_64 rng(21);
        std::vector<PanelRecord> records;
        std::vector<std::pair<std::string, double>> shares;
        for (int c = 0; c < 10; ++c) {
            const std::string country = "C" + std::to_string(c);
            const double level = std::pow(0.5, c) * 1e12;
            shares.emplace_back(country, level);
            for (int y = 2002; y <= 2005; ++y) {
                records.push_back({id_of(country + ":equity:out"), y, level});
            }
        }
        const auto selected = select_countries(build_panel(records).panel, 0.95);
        // oracle: shares are already sorted descending; accumulate to 95%
        double total = 0.0, cum = 0.0;
        for (const auto& [c, v] : shares) total += v;
        std::set<std::string> expect;
        for (const auto& [c, v] : shares) {
            expect.insert(c);
            cum += v;
            if (cum >= 0.95 * total) break;
        }
        CHECK(selected == expect);
        CHECK(selected.size() == 5);  // geometric halving: 5 terms reach 96.875%
    }
}

TEST_CASE("time_averaged_sizes uses only observed years") {
    std::vector<PanelRecord> records = {{id_of("AUT:debt:in"), 2002, 2.0},
                                        {id_of("AUT:debt:in"), 2003, 4.0},
                                        {id_of("AUT:debt:in"), 2005, 6.0}};
    const IndicatorPanel panel = build_panel(records).panel;
    const auto sizes = time_averaged_sizes(panel);
    CHECK(sizes[0] == doctest::Approx(4.0));
}
