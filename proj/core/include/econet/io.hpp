#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "econet/flow_network.hpp"
#include "econet/gkp.hpp"
#include "econet/mlr.hpp"
#include "econet/nlsmm.hpp"
#include "econet/panel.hpp"

namespace econet {

inline constexpr const char* kToolName = "econet";
inline constexpr const char* kToolVersion = "0.1.0";

/// Provenance embedded in every report: tool version, seed and the resolved
/// configuration. Reports carry no timestamps so identical runs produce
/// byte-identical bodies.
struct ReportMeta {
    std::string command;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> config;  // flag, value
};

/// Full double precision ("%.17g"), for generated data files.
std::string format_full(double value);

// --- loaders ------------------------------------------------------------
// CSV files are comma-separated with a fixed header; blank lines and lines
// starting with '#' are skipped. Parse errors throw validation_error with
// the offending line number.

/// `source,target,year,value_usd`, grouped by year.
std::map<int, std::vector<EdgeRecord>> load_edge_records_by_year(const std::string& path);

/// `country,account,direction,year,value_usd`.
std::vector<PanelRecord> load_panel_records(const std::string& path);

/// `year,deflator`.
std::map<int, double> load_deflator(const std::string& path);

/// `member,group`.
std::vector<std::pair<std::string, std::string>> load_merge_map(const std::string& path);

/// `time,kind,label,value_usd`; one series per distinct (kind, label),
/// ordered by (kind, label).
std::vector<DerivativeSeries> load_series(const std::string& path);

/// `time,value_usd` (reference-variable series).
std::vector<SeriesPoint> load_reference_series(const std::string& path);

/// `time,rho` (+ optional `# threshold=...` / `# reference=...` comments).
DensitySeries load_density_csv(const std::string& path);

/// `country,year,gdp_usd` -> country -> year -> value.
std::map<std::string, std::map<int, double>> load_gdp(const std::string& path);

/// `country,year,g`; every country must cover the same year set.
GkpSeries load_gkp_csv(const std::string& path);

/// Relabel edge endpoints through a member->group map, summing merged
/// parallel edges and dropping flows internal to a group.
struct MergeResult {
    std::vector<EdgeRecord> records;
    std::size_t merged_pairs = 0;        // record pairs collapsed into one edge
    std::size_t intra_group_dropped = 0;
};
MergeResult apply_merge(const std::vector<EdgeRecord>& records,
                        const std::vector<std::pair<std::string, std::string>>& merge_map);

// --- validation ----------------------------------------------------------

enum class FileFormat { panel, edges, series };
FileFormat file_format_from_string(const std::string& s);
std::string to_string(FileFormat f);

struct Finding {
    std::size_t line = 0;
    std::string message;
};

struct ValidationReport {
    std::string path;
    FileFormat format = FileFormat::panel;
    std::size_t data_rows = 0;
    std::vector<Finding> findings;
    bool ok() const { return findings.empty(); }
};

/// Schema/consistency scan of one input file: header check, field counts,
/// numeric ranges, duplicate keys. Collects findings instead of throwing.
ValidationReport validate_file(const std::string& path, FileFormat format);

// --- report rendering ------------------------------------------------------
// All renderers are deterministic. CSV values carry 6 significant digits;
// JSON keeps full double precision (undefined values serialize as null).

std::string render_density_csv(const DensitySeries& series, const ReportMeta& meta);
std::string render_gkp_csv(const GkpSeries& series, const ReportMeta& meta);
std::string render_correlation_csv(const std::vector<CorrelationRow>& rows,
                                   const ReportMeta& meta);
/// Fig.-4-style scatter data: `id,S,T`.
std::string render_scatter_csv(const std::vector<IndicatorId>& ids,
                               const TrackingScore& tracking, const ReportMeta& meta);
std::string render_series_csv(const DerivativeSeries& series, const ReportMeta& meta);

/// Nodes ({id, S, T, country_gdp?}), edges ({regressor, regressand, beta,
/// r2, v}), summary and full per-row fit details; the JSON round-trips
/// through parse_gbopn_json for forecasting and path tracking.
std::string render_gbopn_json(const CoefficientNetwork& coeffs, const TrackingScore& tracking,
                              const ReportMeta& meta,
                              const std::map<std::string, double>* country_gdp = nullptr);
CoefficientNetwork parse_gbopn_json(const std::string& text);

struct LabeledFit {
    std::string label;
    SeriesKind kind = SeriesKind::noa;
    NlsmmFit fit;
};
std::string render_fit_report_json(const std::vector<LabeledFit>& fits, const ReportMeta& meta);

std::string render_forecast_json(const ForecastReport& report, const ReportMeta& meta);
std::string render_track_json(const IndicatorId& source, const IndicatorId& target,
                              const PathTrack& track, const ReportMeta& meta);
std::string render_warning_json(const WarningResult& result, double f_max,
                                const ReportMeta& meta);
std::string render_validation_json(const ValidationReport& report, const ReportMeta& meta);

// --- data-file rendering (synthetic generator outputs; full precision) ----

std::string render_panel_data_csv(const std::vector<PanelRecord>& records,
                                  const ReportMeta& meta);
std::string render_edges_data_csv(const std::vector<FlowNetwork>& yearly,
                                  const ReportMeta& meta);
std::string render_gdp_data_csv(const std::map<std::string, std::map<int, double>>& gdp,
                                const ReportMeta& meta);
std::string render_series_data_csv(const DerivativeSeries& series, const ReportMeta& meta);
std::string render_reference_data_csv(const std::vector<SeriesPoint>& series,
                                      const ReportMeta& meta);

// --- files -----------------------------------------------------------------

/// Whole-string write (parent directories created); a failed computation
/// never leaves a partial report behind because rendering precedes opening.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace econet
