#include "econet/panel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace econet {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

std::string to_string(Account a) {
    switch (a) {
        case Account::goods: return "goods";
        case Account::fdi: return "fdi";
        case Account::equity: return "equity";
        case Account::debt: return "debt";
    }
    return "?";
}

std::string to_string(Direction d) { return d == Direction::in ? "in" : "out"; }

Account account_from_string(const std::string& s) {
    if (s == "goods") return Account::goods;
    if (s == "fdi") return Account::fdi;
    if (s == "equity") return Account::equity;
    if (s == "debt") return Account::debt;
    throw validation_error("unknown account class '" + s + "'");
}

Direction direction_from_string(const std::string& s) {
    if (s == "in") return Direction::in;
    if (s == "out") return Direction::out;
    throw validation_error("unknown direction '" + s + "'");
}

std::string IndicatorId::str() const {
    return country + ":" + to_string(account) + ":" + to_string(direction);
}

IndicatorId IndicatorId::parse(const std::string& text) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos || c1 == 0) {
        throw validation_error("invalid indicator id '" + text +
                               "' (expected country:account:direction)");
    }
    return IndicatorId{text.substr(0, c1), account_from_string(text.substr(c1 + 1, c2 - c1 - 1)),
                       direction_from_string(text.substr(c2 + 1))};
}

std::optional<int> IndicatorPanel::index_of(const IndicatorId& id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) return std::nullopt;
    return static_cast<int>(it - ids_.begin());
}

bool IndicatorPanel::has_value(int indicator, int year) const {
    if (year < first_year_ || year > last_year_) return false;
    return !std::isnan(values_[indicator][year - first_year_]);
}

double IndicatorPanel::value(int indicator, int year) const {
    if (year < first_year_ || year > last_year_) return kNaN;
    return values_[indicator][year - first_year_];
}

std::optional<double> IndicatorPanel::value_opt(int indicator, int year) const {
    const double v = value(indicator, year);
    if (std::isnan(v)) return std::nullopt;
    return v;
}

bool IndicatorPanel::complete_over(int indicator, int from_year, int to_year) const {
    for (int y = from_year; y <= to_year; ++y) {
        if (!has_value(indicator, y)) return false;
    }
    return true;
}

std::vector<std::string> IndicatorPanel::countries() const {
    std::vector<std::string> out;
    for (const auto& id : ids_) {
        if (out.empty() || out.back() != id.country) out.push_back(id.country);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

class PanelBuilder {
public:
    static IndicatorPanel make(std::vector<IndicatorId> ids,
                               std::vector<std::vector<double>> values, int first_year,
                               int last_year) {
        IndicatorPanel p;
        p.ids_ = std::move(ids);
        p.values_ = std::move(values);
        p.first_year_ = first_year;
        p.last_year_ = last_year;
        return p;
    }
};

PanelBuildResult build_panel(const std::vector<PanelRecord>& records) {
    if (records.empty()) throw validation_error("panel: no records");

    int y0 = records.front().year, y1 = records.front().year;
    std::vector<IndicatorId> ids;
    for (const auto& r : records) {
        if (!std::isfinite(r.value)) {
            throw validation_error("panel: non-finite value for " + r.id.str() + " in " +
                                   std::to_string(r.year));
        }
        y0 = std::min(y0, r.year);
        y1 = std::max(y1, r.year);
        ids.push_back(r.id);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    const int years = y1 - y0 + 1;
    std::vector<std::vector<double>> values(ids.size(), std::vector<double>(years, kNaN));
    auto index_of = [&](const IndicatorId& id) {
        return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };
    for (const auto& r : records) {
        double& cell = values[index_of(r.id)][r.year - y0];
        if (!std::isnan(cell)) {
            throw validation_error("panel: duplicate cell for " + r.id.str() + " in " +
                                   std::to_string(r.year));
        }
        cell = r.value;
    }

    PanelBuildResult result;
    std::vector<IndicatorId> kept_ids;
    std::vector<std::vector<double>> kept_values;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const int observed = static_cast<int>(
            std::count_if(values[i].begin(), values[i].end(), [](double v) { return !std::isnan(v); }));
        if (observed < 3) {
            result.dropped.push_back(ids[i]);
        } else {
            kept_ids.push_back(std::move(ids[i]));
            kept_values.push_back(std::move(values[i]));
        }
    }
    if (kept_ids.empty()) throw validation_error("panel: no indicator has 3 observed years");
    result.panel = PanelBuilder::make(std::move(kept_ids), std::move(kept_values), y0, y1);
    return result;
}

IndicatorPanel deflate_panel(const IndicatorPanel& panel, const std::map<int, double>& deflator,
                             int base_year) {
    auto factor_at = [&](int year) {
        auto it = deflator.find(year);
        if (it == deflator.end()) {
            throw validation_error("deflator missing year " + std::to_string(year));
        }
        if (!(it->second > 0.0)) {
            throw validation_error("deflator must be positive in year " + std::to_string(year));
        }
        return it->second;
    };
    const double base = factor_at(base_year);

    std::vector<IndicatorId> ids = panel.indicators();
    std::vector<std::vector<double>> values(ids.size(),
                                            std::vector<double>(panel.year_count(), kNaN));
    for (int y = panel.first_year(); y <= panel.last_year(); ++y) {
        bool year_used = false;
        for (int i = 0; i < panel.indicator_count(); ++i) {
            if (panel.has_value(i, y)) {
                year_used = true;
                break;
            }
        }
        if (!year_used) continue;
        const double scale = base / factor_at(y);
        for (int i = 0; i < panel.indicator_count(); ++i) {
            if (panel.has_value(i, y)) {
                values[i][y - panel.first_year()] = panel.value(i, y) * scale;
            }
        }
    }
    return PanelBuilder::make(std::move(ids), std::move(values), panel.first_year(),
                              panel.last_year());
}

std::set<std::string> select_countries(const IndicatorPanel& panel, double coverage) {
    if (!(coverage > 0.0) || coverage > 1.0) {
        throw std::invalid_argument("select_countries: coverage must be in (0, 1]");
    }
    // Per (account, direction) class: each country's time-averaged value.
    std::map<std::pair<Account, Direction>, std::map<std::string, double>> classes;
    for (int i = 0; i < panel.indicator_count(); ++i) {
        const IndicatorId& id = panel.indicators()[i];
        double sum = 0.0;
        int count = 0;
        for (int y = panel.first_year(); y <= panel.last_year(); ++y) {
            if (panel.has_value(i, y)) {
                sum += std::fabs(panel.value(i, y));
                ++count;
            }
        }
        if (count > 0) classes[{id.account, id.direction}][id.country] += sum / count;
    }

    std::set<std::string> selected;
    for (const auto& [cls, by_country] : classes) {
        double total = 0.0;
        for (const auto& [country, avg] : by_country) total += avg;
        if (total <= 0.0) continue;
        std::vector<std::pair<std::string, double>> sorted(by_country.begin(), by_country.end());
        std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        double cum = 0.0;
        for (const auto& [country, avg] : sorted) {
            selected.insert(country);
            cum += avg;
            if (cum >= coverage * total) break;
        }
    }
    return selected;
}

std::vector<double> time_averaged_sizes(const IndicatorPanel& panel) {
    std::vector<double> sizes(panel.indicator_count(), 0.0);
    for (int i = 0; i < panel.indicator_count(); ++i) {
        double sum = 0.0;
        int count = 0;
        for (int y = panel.first_year(); y <= panel.last_year(); ++y) {
            if (panel.has_value(i, y)) {
                sum += std::fabs(panel.value(i, y));
                ++count;
            }
        }
        sizes[i] = count > 0 ? sum / count : 0.0;
    }
    return sizes;
}

}  // namespace econet
