#include "econet/io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace econet {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string::size_type start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

struct CsvRow {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

struct CsvDoc {
    std::string header;
    std::vector<CsvRow> rows;
};

CsvDoc read_csv(const std::string& path, const std::string& expected_header) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open file '" + path + "'");
    CsvDoc doc;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (!have_header) {
            doc.header = t;
            have_header = true;
            if (t != expected_header) {
                throw validation_error(path + ":" + std::to_string(line_no) +
                                       ": unexpected header '" + t + "' (expected '" +
                                       expected_header + "')");
            }
            continue;
        }
        doc.rows.push_back({line_no, split_fields(line)});
    }
    if (!have_header) throw validation_error(path + ": empty file, header expected");
    return doc;
}

double parse_number(const std::string& s, const std::string& where) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(v)) {
        throw validation_error(where + ": invalid number '" + s + "'");
    }
    return v;
}

int parse_year(const std::string& s, const std::string& where) {
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0' || v < 1000 || v > 9999) {
        throw validation_error(where + ": invalid year '" + s + "'");
    }
    return static_cast<int>(v);
}

std::string at_line(const std::string& path, std::size_t line) {
    return path + ":" + std::to_string(line);
}

void require_fields(const CsvRow& row, std::size_t n, const std::string& path) {
    if (row.fields.size() != n) {
        throw validation_error(at_line(path, row.line) + ": expected " + std::to_string(n) +
                               " fields, got " + std::to_string(row.fields.size()));
    }
}

std::string meta_comment(const ReportMeta& meta) {
    std::ostringstream os;
    os << "# " << kToolName << " " << kToolVersion << " | command=" << meta.command
       << " | seed=" << meta.seed;
    for (const auto& [k, v] : meta.config) os << " | " << k << "=" << v;
    os << "\n";
    return os.str();
}

json envelope(const ReportMeta& meta) {
    json j;
    j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    j["command"] = meta.command;
    j["seed"] = meta.seed;
    json cfg = json::object();
    for (const auto& [k, v] : meta.config) cfg[k] = v;
    j["config"] = cfg;
    return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// null <-> NaN for optional numeric report fields
json num_or_null(double v) { return std::isnan(v) ? json() : json(v); }
double num_from(const json& j) { return j.is_null() ? kNaN : j.get<double>(); }

}  // namespace

std::string format_full(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

// --- loaders ----------------------------------------------------------------

static const char* kEdgesHeader = "source,target,year,value_usd";
static const char* kPanelHeader = "country,account,direction,year,value_usd";
static const char* kSeriesHeader = "time,kind,label,value_usd";
static const char* kReferenceHeader = "time,value_usd";
static const char* kDensityHeader = "time,rho";
static const char* kGdpHeader = "country,year,gdp_usd";
static const char* kGkpHeader = "country,year,g";
static const char* kDeflatorHeader = "year,deflator";
static const char* kMergeHeader = "member,group";

std::map<int, std::vector<EdgeRecord>> load_edge_records_by_year(const std::string& path) {
    const CsvDoc doc = read_csv(path, kEdgesHeader);
    std::map<int, std::vector<EdgeRecord>> out;
    std::set<std::tuple<std::string, std::string, int>> seen;
    for (const auto& row : doc.rows) {
        require_fields(row, 4, path);
        const std::string where = at_line(path, row.line);
        if (row.fields[0].empty() || row.fields[1].empty()) {
            throw validation_error(where + ": empty node id");
        }
        const int year = parse_year(row.fields[2], where);
        const double value = parse_number(row.fields[3], where);
        if (value < 0.0) throw validation_error(where + ": negative value_usd");
        if (!seen.emplace(row.fields[0], row.fields[1], year).second) {
            throw validation_error(where + ": duplicate edge " + row.fields[0] + " -> " +
                                   row.fields[1] + " in " + std::to_string(year));
        }
        out[year].push_back({row.fields[0], row.fields[1], value});
    }
    if (out.empty()) throw validation_error(path + ": no edge records");
    return out;
}

std::vector<PanelRecord> load_panel_records(const std::string& path) {
    const CsvDoc doc = read_csv(path, kPanelHeader);
    std::vector<PanelRecord> out;
    for (const auto& row : doc.rows) {
        require_fields(row, 5, path);
        const std::string where = at_line(path, row.line);
        PanelRecord rec;
        if (row.fields[0].empty()) throw validation_error(where + ": empty country");
        rec.id.country = row.fields[0];
        try {
            rec.id.account = account_from_string(row.fields[1]);
            rec.id.direction = direction_from_string(row.fields[2]);
        } catch (const validation_error& e) {
            throw validation_error(where + ": " + e.what());
        }
        rec.year = parse_year(row.fields[3], where);
        rec.value = parse_number(row.fields[4], where);
        out.push_back(std::move(rec));
    }
    if (out.empty()) throw validation_error(path + ": no panel records");
    return out;
}

std::map<int, double> load_deflator(const std::string& path) {
    const CsvDoc doc = read_csv(path, kDeflatorHeader);
    std::map<int, double> out;
    for (const auto& row : doc.rows) {
        require_fields(row, 2, path);
        const std::string where = at_line(path, row.line);
        const int year = parse_year(row.fields[0], where);
        const double v = parse_number(row.fields[1], where);
        if (!(v > 0.0)) throw validation_error(where + ": deflator must be positive");
        if (!out.emplace(year, v).second) {
            throw validation_error(where + ": duplicate deflator year " + std::to_string(year));
        }
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> load_merge_map(const std::string& path) {
    const CsvDoc doc = read_csv(path, kMergeHeader);
    std::vector<std::pair<std::string, std::string>> out;
    std::set<std::string> members;
    for (const auto& row : doc.rows) {
        require_fields(row, 2, path);
        const std::string where = at_line(path, row.line);
        if (row.fields[0].empty() || row.fields[1].empty()) {
            throw validation_error(where + ": empty member or group");
        }
        if (!members.insert(row.fields[0]).second) {
            throw validation_error(where + ": member '" + row.fields[0] + "' mapped twice");
        }
        out.emplace_back(row.fields[0], row.fields[1]);
    }
    return out;
}

std::vector<DerivativeSeries> load_series(const std::string& path) {
    const CsvDoc doc = read_csv(path, kSeriesHeader);
    std::map<std::pair<std::string, std::string>, DerivativeSeries> groups;
    std::set<std::tuple<std::string, std::string, int>> seen;
    for (const auto& row : doc.rows) {
        require_fields(row, 4, path);
        const std::string where = at_line(path, row.line);
        YearMonth time;
        SeriesKind kind;
        try {
            time = YearMonth::parse(row.fields[0]);
            kind = series_kind_from_string(row.fields[1]);
        } catch (const validation_error& e) {
            throw validation_error(where + ": " + e.what());
        }
        const std::string& label = row.fields[2];
        if (label.empty()) throw validation_error(where + ": empty label");
        const double value = parse_number(row.fields[3], where);
        if (value < 0.0) throw validation_error(where + ": negative value_usd");
        if (!seen.emplace(row.fields[1], label, time.index()).second) {
            throw validation_error(where + ": duplicate point for " + label + " at " + time.str());
        }
        auto& series = groups[{row.fields[1], label}];
        series.kind = kind;
        series.label = label;
        series.points.push_back({time, value});
    }
    if (groups.empty()) throw validation_error(path + ": no series records");
    std::vector<DerivativeSeries> out;
    for (auto& [key, series] : groups) {
        std::sort(series.points.begin(), series.points.end(),
                  [](const SeriesPoint& a, const SeriesPoint& b) { return a.time < b.time; });
        series.validate();
        out.push_back(std::move(series));
    }
    return out;
}

std::vector<SeriesPoint> load_reference_series(const std::string& path) {
    const CsvDoc doc = read_csv(path, kReferenceHeader);
    std::vector<SeriesPoint> out;
    std::set<int> seen;
    for (const auto& row : doc.rows) {
        require_fields(row, 2, path);
        const std::string where = at_line(path, row.line);
        YearMonth time;
        try {
            time = YearMonth::parse(row.fields[0]);
        } catch (const validation_error& e) {
            throw validation_error(where + ": " + e.what());
        }
        const double value = parse_number(row.fields[1], where);
        if (!seen.insert(time.index()).second) {
            throw validation_error(where + ": duplicate time " + time.str());
        }
        out.push_back({time, value});
    }
    if (out.empty()) throw validation_error(path + ": no reference points");
    std::sort(out.begin(), out.end(),
              [](const SeriesPoint& a, const SeriesPoint& b) { return a.time < b.time; });
    return out;
}

DensitySeries load_density_csv(const std::string& path) {
    const CsvDoc doc = read_csv(path, kDensityHeader);
    DensitySeries out;
    for (const auto& row : doc.rows) {
        require_fields(row, 2, path);
        const std::string where = at_line(path, row.line);
        YearMonth time;
        try {
            time = YearMonth::parse(row.fields[0]);
        } catch (const validation_error& e) {
            throw validation_error(where + ": " + e.what());
        }
        out.points.push_back({time, parse_number(row.fields[1], where)});
    }
    if (out.points.empty()) throw validation_error(path + ": no density points");
    std::sort(out.points.begin(), out.points.end(),
              [](const DensityPoint& a, const DensityPoint& b) { return a.time < b.time; });
    out.reference = out.points.front().time;
    out.validate();
    return out;
}

std::map<std::string, std::map<int, double>> load_gdp(const std::string& path) {
    const CsvDoc doc = read_csv(path, kGdpHeader);
    std::map<std::string, std::map<int, double>> out;
    for (const auto& row : doc.rows) {
        require_fields(row, 3, path);
        const std::string where = at_line(path, row.line);
        if (row.fields[0].empty()) throw validation_error(where + ": empty country");
        const int year = parse_year(row.fields[1], where);
        const double v = parse_number(row.fields[2], where);
        if (!(v > 0.0)) throw validation_error(where + ": gdp_usd must be positive");
        if (!out[row.fields[0]].emplace(year, v).second) {
            throw validation_error(where + ": duplicate gdp for " + row.fields[0] + " in " +
                                   std::to_string(year));
        }
    }
    if (out.empty()) throw validation_error(path + ": no gdp records");
    return out;
}

GkpSeries load_gkp_csv(const std::string& path) {
    const CsvDoc doc = read_csv(path, kGkpHeader);
    std::map<std::string, std::map<int, double>> values;
    for (const auto& row : doc.rows) {
        require_fields(row, 3, path);
        const std::string where = at_line(path, row.line);
        if (row.fields[0].empty()) throw validation_error(where + ": empty country");
        const int year = parse_year(row.fields[1], where);
        const double g = parse_number(row.fields[2], where);
        if (g < 0.0 || g > 1.0) throw validation_error(where + ": g outside [0, 1]");
        if (!values[row.fields[0]].emplace(year, g).second) {
            throw validation_error(where + ": duplicate g for " + row.fields[0] + " in " +
                                   std::to_string(year));
        }
    }
    if (values.empty()) throw validation_error(path + ": no gkp records");

    GkpSeries series;
    for (const auto& [year, g] : values.begin()->second) series.years.push_back(year);
    for (const auto& [country, by_year] : values) {
        std::vector<int> years;
        std::vector<double> g;
        for (const auto& [year, value] : by_year) {
            years.push_back(year);
            g.push_back(value);
        }
        if (years != series.years) {
            throw validation_error(path + ": country '" + country +
                                   "' covers a different year set");
        }
        series.nodes.push_back(country);
        series.g.push_back(std::move(g));
    }
    return series;
}

MergeResult apply_merge(const std::vector<EdgeRecord>& records,
                        const std::vector<std::pair<std::string, std::string>>& merge_map) {
    std::map<std::string, std::string> lookup(merge_map.begin(), merge_map.end());
    auto mapped = [&](const std::string& id) {
        auto it = lookup.find(id);
        return it == lookup.end() ? id : it->second;
    };
    MergeResult result;
    std::map<std::pair<std::string, std::string>, double> sums;
    std::map<std::pair<std::string, std::string>, std::size_t> counts;
    for (const auto& r : records) {
        const std::string s = mapped(r.source);
        const std::string t = mapped(r.target);
        if (s == t) {
            ++result.intra_group_dropped;
            continue;
        }
        sums[{s, t}] += r.weight;
        ++counts[{s, t}];
    }
    for (const auto& [key, weight] : sums) {
        result.records.push_back({key.first, key.second, weight});
        if (counts[key] > 1) result.merged_pairs += counts[key] - 1;
    }
    return result;
}

// --- validation ---------------------------------------------------------

FileFormat file_format_from_string(const std::string& s) {
    if (s == "panel") return FileFormat::panel;
    if (s == "edges") return FileFormat::edges;
    if (s == "series") return FileFormat::series;
    throw validation_error("unknown file format '" + s + "' (expected panel, edges or series)");
}

std::string to_string(FileFormat f) {
    switch (f) {
        case FileFormat::panel: return "panel";
        case FileFormat::edges: return "edges";
        case FileFormat::series: return "series";
    }
    return "?";
}

ValidationReport validate_file(const std::string& path, FileFormat format) {
    ValidationReport report;
    report.path = path;
    report.format = format;

    const char* expected_header = format == FileFormat::panel    ? kPanelHeader
                                  : format == FileFormat::edges ? kEdgesHeader
                                                                : kSeriesHeader;
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open file '" + path + "'");

    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::set<std::vector<std::string>> keys;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (!have_header) {
            have_header = true;
            if (t != expected_header) {
                report.findings.push_back(
                    {line_no, "unexpected header '" + t + "' (expected '" +
                                  std::string(expected_header) + "')"});
                return report;  // nothing else is checkable
            }
            continue;
        }
        ++report.data_rows;
        const std::vector<std::string> f = split_fields(line);
        auto fail = [&](const std::string& msg) { report.findings.push_back({line_no, msg}); };
        const std::size_t want = format == FileFormat::panel ? 5 : 4;
        if (f.size() != want) {
            fail("expected " + std::to_string(want) + " fields, got " + std::to_string(f.size()));
            continue;
        }
        try {
            // Key fields first so duplicates are caught even when the value
            // field is itself bad.
            std::vector<std::string> key;
            switch (format) {
                case FileFormat::panel: {
                    if (f[0].empty()) throw validation_error("empty country");
                    account_from_string(f[1]);
                    direction_from_string(f[2]);
                    parse_year(f[3], "row");
                    key = {f[0], f[1], f[2], f[3]};
                    break;
                }
                case FileFormat::edges: {
                    if (f[0].empty() || f[1].empty()) throw validation_error("empty node id");
                    parse_year(f[2], "row");
                    key = {f[0], f[1], f[2]};
                    break;
                }
                case FileFormat::series: {
                    YearMonth::parse(f[0]);
                    series_kind_from_string(f[1]);
                    if (f[2].empty()) throw validation_error("empty label");
                    key = {f[0], f[1], f[2]};
                    break;
                }
            }
            if (!keys.insert(key).second) {
                std::string joined;
                for (const auto& part : key) joined += (joined.empty() ? "" : ",") + part;
                fail("duplicate row for (" + joined + ")");
            }
            const double value = parse_number(f.back(), "row");
            if (format != FileFormat::panel && value < 0.0) {
                throw validation_error("negative value_usd");
            }
        } catch (const validation_error& e) {
            std::string msg = e.what();
            const auto pos = msg.find("row: ");
            if (pos != std::string::npos) msg = msg.substr(pos + 5);
            fail(msg);
        }
    }
    if (!have_header) report.findings.push_back({0, "empty file, header expected"});
    return report;
}

// --- report rendering ---------------------------------------------------

std::string render_density_csv(const DensitySeries& series, const ReportMeta& meta) {
    std::ostringstream os;
    os << meta_comment(meta);
    os << "# threshold=" << format_sig(series.threshold_used) << " reference="
       << series.reference.str() << "\n";
    os << kDensityHeader << "\n";
    for (const auto& p : series.points) {
        os << p.time.str() << "," << format_sig(p.rho) << "\n";
    }
    return os.str();
}

std::string render_gkp_csv(const GkpSeries& series, const ReportMeta& meta) {
    std::ostringstream os;
    os << meta_comment(meta) << kGkpHeader << "\n";
    for (std::size_t k = 0; k < series.nodes.size(); ++k) {
        for (std::size_t y = 0; y < series.years.size(); ++y) {
            os << series.nodes[k] << "," << series.years[y] << "," << format_sig(series.g[k][y])
               << "\n";
        }
    }
    return os.str();
}

std::string render_correlation_csv(const std::vector<CorrelationRow>& rows,
                                   const ReportMeta& meta) {
    std::ostringstream os;
    os << meta_comment(meta) << "country,corr_gkp,corr_imports,corr_exports\n";
    for (const auto& r : rows) {
        os << r.country << "," << format_sig(r.corr_gkp) << "," << format_sig(r.corr_imports)
           << "," << format_sig(r.corr_exports) << "\n";
    }
    return os.str();
}

std::string render_scatter_csv(const std::vector<IndicatorId>& ids,
                               const TrackingScore& tracking, const ReportMeta& meta) {
    std::ostringstream os;
    os << meta_comment(meta) << "id,S,T\n";
    for (std::size_t i = 0; i < ids.size(); ++i) {
        os << ids[i].str() << "," << format_sig(tracking.sizes[i]) << ","
           << format_sig(tracking.centrality[i]) << "\n";
    }
    return os.str();
}

std::string render_series_csv(const DerivativeSeries& series, const ReportMeta& meta) {
    std::ostringstream os;
    os << meta_comment(meta) << kSeriesHeader << "\n";
    for (const auto& p : series.points) {
        os << p.time.str() << "," << to_string(series.kind) << "," << series.label << ","
           << format_sig(p.value) << "\n";
    }
    return os.str();
}

std::string render_gbopn_json(const CoefficientNetwork& coeffs, const TrackingScore& tracking,
                              const ReportMeta& meta,
                              const std::map<std::string, double>* country_gdp) {
    json j = envelope(meta);
    j["summary"] = {{"indicators", coeffs.summary.indicators},
                    {"accepted", coeffs.summary.accepted},
                    {"rejected", coeffs.summary.rejected},
                    {"unfittable", coeffs.summary.unfittable},
                    {"mean_error", num_or_null(coeffs.summary.mean_error)},
                    {"median_error", num_or_null(coeffs.summary.median_error)}};

    json nodes = json::array();
    for (std::size_t i = 0; i < coeffs.ids.size(); ++i) {
        json node = {{"id", coeffs.ids[i].str()},
                     {"S", tracking.sizes[i]},
                     {"T", tracking.centrality[i]}};
        if (country_gdp) {
            auto it = country_gdp->find(coeffs.ids[i].country);
            if (it != country_gdp->end()) node["country_gdp"] = it->second;
        }
        nodes.push_back(std::move(node));
    }
    j["nodes"] = std::move(nodes);

    json edges = json::array();
    for (const auto& e : tracking.edges) {
        const RowFit& row = coeffs.rows[e.regressand];
        const auto term = std::find_if(row.terms.begin(), row.terms.end(),
                                       [&](const RegressorTerm& t) {
                                           return t.regressor == e.regressor;
                                       });
        edges.push_back({{"regressor", coeffs.ids[e.regressor].str()},
                         {"regressand", coeffs.ids[e.regressand].str()},
                         {"beta", term->beta},
                         {"r2", term->edge_r2},
                         {"v", e.value}});
    }
    j["edges"] = std::move(edges);

    json rows = json::array();
    for (const RowFit& row : coeffs.rows) {
        json terms = json::array();
        for (const auto& t : row.terms) {
            terms.push_back({{"regressor", coeffs.ids[t.regressor].str()},
                             {"beta", t.beta},
                             {"r2", t.edge_r2},
                             {"t_pvalue", t.t_pvalue}});
        }
        json r = {{"id", coeffs.ids[row.regressand].str()},
                  {"status", to_string(row.status)},
                  {"intercept", row.intercept},
                  {"error", num_or_null(row.row_error)},
                  {"f_pvalue", num_or_null(row.f_pvalue)},
                  {"samples", row.sample_count},
                  {"terms", std::move(terms)}};
        if (!row.note.empty()) r["note"] = row.note;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return dump(j);
}

CoefficientNetwork parse_gbopn_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw validation_error(std::string("model file is not valid JSON: ") + e.what());
    }
    if (!j.contains("rows")) throw validation_error("model file has no 'rows' section");

    CoefficientNetwork net;
    for (const auto& r : j["rows"]) net.ids.push_back(IndicatorId::parse(r.at("id")));
    std::sort(net.ids.begin(), net.ids.end());
    net.ids.erase(std::unique(net.ids.begin(), net.ids.end()), net.ids.end());

    net.rows.resize(net.ids.size());
    for (const auto& r : j["rows"]) {
        const IndicatorId id = IndicatorId::parse(r.at("id"));
        const int idx = *net.index_of(id);
        RowFit& row = net.rows[idx];
        row.regressand = idx;
        row.status = row_status_from_string(r.at("status"));
        row.intercept = r.value("intercept", 0.0);
        row.row_error = num_from(r.at("error"));
        row.f_pvalue = num_from(r.at("f_pvalue"));
        row.sample_count = r.value("samples", 0);
        for (const auto& t : r.at("terms")) {
            RegressorTerm term;
            const auto reg = net.index_of(IndicatorId::parse(t.at("regressor")));
            if (!reg) throw validation_error("model file: term regressor not among row ids");
            term.regressor = *reg;
            term.beta = t.at("beta");
            term.edge_r2 = t.at("r2");
            term.t_pvalue = t.value("t_pvalue", kNaN);
            row.terms.push_back(term);
        }
        std::sort(row.terms.begin(), row.terms.end(),
                  [](const RegressorTerm& a, const RegressorTerm& b) {
                      return a.regressor < b.regressor;
                  });
    }
    if (j.contains("summary")) {
        const auto& s = j["summary"];
        net.summary.indicators = s.value("indicators", 0);
        net.summary.accepted = s.value("accepted", 0);
        net.summary.rejected = s.value("rejected", 0);
        net.summary.unfittable = s.value("unfittable", 0);
        net.summary.mean_error = num_from(s.at("mean_error"));
        net.summary.median_error = num_from(s.at("median_error"));
    }
    return net;
}

std::string render_fit_report_json(const std::vector<LabeledFit>& fits, const ReportMeta& meta) {
    json j = envelope(meta);
    json rows = json::array();
    for (const auto& f : fits) {
        rows.push_back({{"label", f.label},
                        {"kind", to_string(f.kind)},
                        {"a_r", f.fit.a_r},
                        {"gamma1", f.fit.gamma1},
                        {"gamma2", f.fit.gamma2},
                        {"m", num_or_null(f.fit.memory_ratio)},
                        {"delta_t", f.fit.delta_t_months},
                        {"p_r", num_or_null(f.fit.p_r)},
                        {"verdict", to_string(f.fit.verdict)},
                        {"points", f.fit.points_used}});
    }
    j["fits"] = std::move(rows);
    return dump(j);
}

std::string render_forecast_json(const ForecastReport& report, const ReportMeta& meta) {
    json j = envelope(meta);
    j["from_year"] = report.from_year;
    json rows = json::array();
    for (const auto& r : report.rows) {
        json row = {{"id", r.id.str()}, {"predicted", r.predicted}};
        if (r.actual) row["actual"] = *r.actual;
        if (r.rel_error) row["rel_error"] = *r.rel_error;
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    json skipped = json::array();
    for (const auto& [id, reason] : report.skipped) {
        skipped.push_back({{"id", id.str()}, {"reason", reason}});
    }
    j["skipped"] = std::move(skipped);
    return dump(j);
}

std::string render_track_json(const IndicatorId& source, const IndicatorId& target,
                              const PathTrack& track, const ReportMeta& meta) {
    json j = envelope(meta);
    j["source"] = source.str();
    j["target"] = target.str();
    j["found"] = track.found;
    json path = json::array();
    for (const auto& id : track.path) path.push_back(id.str());
    j["path"] = std::move(path);
    j["error_bound"] = track.found ? json(track.error_bound) : json();
    return dump(j);
}

std::string render_warning_json(const WarningResult& result, double f_max,
                                const ReportMeta& meta) {
    json j = envelope(meta);
    j["f_max"] = f_max;
    j["compared_points"] = result.compared_points;
    j["first_warning"] = result.first ? json(result.first->str()) : json();
    json warnings = json::array();
    for (const auto& t : result.warnings) warnings.push_back(t.str());
    j["warnings"] = std::move(warnings);
    return dump(j);
}

std::string render_validation_json(const ValidationReport& report, const ReportMeta& meta) {
    json j = envelope(meta);
    j["file"] = report.path;
    j["format"] = to_string(report.format);
    j["rows"] = report.data_rows;
    j["ok"] = report.ok();
    json findings = json::array();
    for (const auto& f : report.findings) {
        findings.push_back({{"line", f.line}, {"message", f.message}});
    }
    j["findings"] = std::move(findings);
    return dump(j);
}

// --- data-file rendering --------------------------------------------------

std::string render_panel_data_csv(const std::vector<PanelRecord>& records,
                                  const ReportMeta& meta) {
    std::ostringstream os;
    os << meta_comment(meta) << kPanelHeader << "\n";
    for (const auto& r : records) {
        os << r.id.country << "," << to_string(r.id.account) << "," << to_string(r.id.direction)
           << "," << r.year << "," << format_full(r.value) << "\n";
    }
    return os.str();
}

std::string render_edges_data_csv(const std::vector<FlowNetwork>& yearly,
                                  const ReportMeta& meta) {
    std::ostringstream os;
    os << meta_comment(meta) << kEdgesHeader << "\n";
    for (const auto& net : yearly) {
        net.for_each_edge([&](int s, int t, double w) {
            os << net.node_id(s) << "," << net.node_id(t) << "," << net.year().value() << ","
               << format_full(w) << "\n";
        });
    }
    return os.str();
}

std::string render_gdp_data_csv(const std::map<std::string, std::map<int, double>>& gdp,
                                const ReportMeta& meta) {
    std::ostringstream os;
    os << meta_comment(meta) << kGdpHeader << "\n";
    for (const auto& [country, by_year] : gdp) {
        for (const auto& [year, value] : by_year) {
            os << country << "," << year << "," << format_full(value) << "\n";
        }
    }
    return os.str();
}

std::string render_series_data_csv(const DerivativeSeries& series, const ReportMeta& meta) {
    std::ostringstream os;
    os << meta_comment(meta) << kSeriesHeader << "\n";
    for (const auto& p : series.points) {
        os << p.time.str() << "," << to_string(series.kind) << "," << series.label << ","
           << format_full(p.value) << "\n";
    }
    return os.str();
}

std::string render_reference_data_csv(const std::vector<SeriesPoint>& series,
                                      const ReportMeta& meta) {
    std::ostringstream os;
    os << meta_comment(meta) << kReferenceHeader << "\n";
    for (const auto& p : series) {
        os << p.time.str() << "," << format_full(p.value) << "\n";
    }
    return os.str();
}

// --- files ------------------------------------------------------------------

void write_text_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw validation_error("cannot write file '" + path + "'");
    out << content;
    if (!out) throw validation_error("write failed for '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot open file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace econet
