#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "econet/common.hpp"

namespace econet {

/// Balance-of-payments account classes carried by the panel.
enum class Account { goods, fdi, equity, debt };
enum class Direction { in, out };

std::string to_string(Account a);
std::string to_string(Direction d);
Account account_from_string(const std::string& s);
Direction direction_from_string(const std::string& s);

/// One indicator: a country's account class in one direction,
/// e.g. "DEU:goods:out" (German exports of goods).
struct IndicatorId {
    std::string country;
    Account account = Account::goods;
    Direction direction = Direction::in;

    auto operator<=>(const IndicatorId&) const = default;

    std::string str() const;
    static IndicatorId parse(const std::string& text);  // "country:account:direction"
};

struct PanelRecord {
    IndicatorId id;
    int year = 0;
    double value = 0.0;  // USD
};

/// Rectangular panel of indicator values over a consecutive year range.
/// Cells may be missing; indicators retained in the panel have at least
/// 3 non-missing years and only finite values. Immutable once built.
class IndicatorPanel {
public:
    IndicatorPanel() = default;

    const std::vector<IndicatorId>& indicators() const { return ids_; }
    int indicator_count() const { return static_cast<int>(ids_.size()); }
    int first_year() const { return first_year_; }
    int last_year() const { return last_year_; }
    int year_count() const { return last_year_ - first_year_ + 1; }

    std::optional<int> index_of(const IndicatorId& id) const;
    bool has_value(int indicator, int year) const;
    /// NaN when the cell is missing.
    double value(int indicator, int year) const;
    std::optional<double> value_opt(int indicator, int year) const;

    /// True when the indicator has a value for every year in [from, to].
    bool complete_over(int indicator, int from_year, int to_year) const;

    /// Distinct countries present in the panel, sorted.
    std::vector<std::string> countries() const;

    friend class PanelBuilder;

private:
    std::vector<IndicatorId> ids_;       // sorted
    std::vector<std::vector<double>> values_;  // [indicator][year - first_year_], NaN = missing
    int first_year_ = 0;
    int last_year_ = -1;
};

struct PanelBuildResult {
    IndicatorPanel panel;
    /// Indicators dropped for having fewer than 3 non-missing years.
    std::vector<IndicatorId> dropped;
};

/// Validates records (finite values, no duplicate (indicator, year) cells),
/// drops indicators with fewer than 3 observed years, and assembles the
/// panel over the full [min year, max year] range seen in the input.
PanelBuildResult build_panel(const std::vector<PanelRecord>& records);

/// Rescale every value by deflator(base_year) / deflator(year); base-year
/// values are unchanged. Throws validation_error naming any panel year
/// missing from the deflator table.
IndicatorPanel deflate_panel(const IndicatorPanel& panel, const std::map<int, double>& deflator,
                             int base_year);

/// Union over the panel's (account, direction) classes of the smallest
/// country sets, by descending time-averaged value, whose cumulative share
/// of the class's average total value reaches `coverage`.
std::set<std::string> select_countries(const IndicatorPanel& panel, double coverage = 0.95);

/// Time-averaged monetary size S_i of each indicator: the mean of |value|
/// over the indicator's non-missing years.
std::vector<double> time_averaged_sizes(const IndicatorPanel& panel);

}  // namespace econet
