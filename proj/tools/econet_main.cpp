// econet — command-line front end for the economic network analysis library:
// balance-of-payments network fitting and forecasting, portfolio-investment-
// network density and crisis warning signals, and trade-network gate-keeping
// analysis, plus synthetic data generation and input validation.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "econet/gkp.hpp"
#include "econet/io.hpp"
#include "econet/mlr.hpp"
#include "econet/nlsmm.hpp"
#include "econet/panel.hpp"
#include "econet/percolation.hpp"
#include "econet/synth.hpp"

namespace {

using namespace econet;

// Exit codes: 0 success, 2 input/validation failure, 3 computation failure
// (CLI11 usage errors keep their own codes).
constexpr int kExitValidation = 2;
constexpr int kExitComputation = 3;

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
    } else {
        write_text_file(out_path, content);
    }
}

std::string joined(const std::vector<int>& values) {
    std::ostringstream os;
    for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << values[i];
    return os.str();
}

std::vector<FlowNetwork> networks_by_year(const std::map<int, std::vector<EdgeRecord>>& by_year,
                                          const std::vector<std::pair<std::string, std::string>>& merge_map) {
    std::vector<FlowNetwork> nets;
    for (const auto& [year, records] : by_year) {
        const std::vector<EdgeRecord>* effective = &records;
        MergeResult merged;
        if (!merge_map.empty()) {
            merged = apply_merge(records, merge_map);
            effective = &merged.records;
        }
        nets.push_back(build_flow_network(*effective, year).network);
    }
    return nets;
}

struct FitBopCmd {
    std::string panel_path, deflator_path, gdp_path, out_dir;
    int base_year = 0;
    bool holdout_last = false;
    FitCriteria criteria;
    std::uint64_t seed = 0;

    int run() const {
        if (!deflator_path.empty() && base_year == 0) {
            throw validation_error("--deflator requires --base-year");
        }
        const auto records = load_panel_records(panel_path);
        PanelBuildResult built = build_panel(records);
        IndicatorPanel panel = std::move(built.panel);
        if (!deflator_path.empty()) {
            panel = deflate_panel(panel, load_deflator(deflator_path), base_year);
        }

        const CoefficientNetwork coeffs = fit_gbopn(panel, criteria, holdout_last);
        const std::vector<double> sizes = time_averaged_sizes(panel);
        const TrackingScore tracking = tracking_centrality(coeffs, sizes);

        std::map<std::string, double> country_gdp;
        if (!gdp_path.empty()) {
            for (const auto& [country, by_year] : load_gdp(gdp_path)) {
                double sum = 0.0;
                for (const auto& [year, v] : by_year) sum += v;
                country_gdp[country] = sum / static_cast<double>(by_year.size());
            }
        }

        ReportMeta meta{"fit-bop", seed, {}};
        meta.config = {{"panel", panel_path},
                       {"deflator", deflator_path},
                       {"base_year", std::to_string(base_year)},
                       {"holdout_last", holdout_last ? "true" : "false"},
                       {"alpha", format_sig(criteria.alpha)},
                       {"max_error", format_sig(criteria.max_mean_error)},
                       {"max_cond", format_sig(criteria.max_condition)},
                       {"max_vif", format_sig(criteria.max_vif)},
                       {"dropped_indicators", std::to_string(built.dropped.size())}};
        const std::string report =
            render_gbopn_json(coeffs, tracking, meta, gdp_path.empty() ? nullptr : &country_gdp);
        const std::string scatter = render_scatter_csv(coeffs.ids, tracking, meta);
        write_text_file(out_dir + "/gbopn.json", report);
        write_text_file(out_dir + "/scatter.csv", scatter);
        std::cout << "fit-bop: " << coeffs.summary.accepted << "/" << coeffs.summary.indicators
                  << " rows accepted; reports in " << out_dir << "\n";
        return 0;
    }
};

struct ForecastCmd {
    std::string model_path, panel_path, out_path;
    int from_year = 0;
    std::uint64_t seed = 0;

    int run() const {
        const CoefficientNetwork coeffs = parse_gbopn_json(read_text_file(model_path));
        const IndicatorPanel panel = build_panel(load_panel_records(panel_path)).panel;
        const ForecastReport report = forecast(coeffs, panel, from_year);
        ReportMeta meta{"forecast", seed, {{"model", model_path},
                                           {"panel", panel_path},
                                           {"from_year", std::to_string(from_year)}}};
        emit(render_forecast_json(report, meta), out_path);
        return 0;
    }
};

struct TrackCmd {
    std::string model_path, source, target, out_path;
    std::uint64_t seed = 0;

    int run() const {
        const CoefficientNetwork coeffs = parse_gbopn_json(read_text_file(model_path));
        const IndicatorId src = IndicatorId::parse(source);
        const IndicatorId dst = IndicatorId::parse(target);
        const PathTrack track = path_track(coeffs, src, dst);
        ReportMeta meta{"track", seed, {{"model", model_path}, {"source", source}, {"target", target}}};
        emit(render_track_json(src, dst, track, meta), out_path);
        return 0;
    }
};

struct PinDensityCmd {
    std::string holdings_path, out_path;
    double threshold = 52e6;
    int ref_year = 0;
    bool semiannual = false;
    std::uint64_t seed = 0;

    int run() const {
        const auto by_year = load_edge_records_by_year(holdings_path);
        const std::vector<FlowNetwork> nets = networks_by_year(by_year, {});
        DensitySeries series = build_density_series(nets, threshold, ref_year);
        if (semiannual) series = resample_density(series);
        ReportMeta meta{"pin-density", seed, {{"holdings", holdings_path},
                                              {"threshold", format_sig(threshold)},
                                              {"ref_year", std::to_string(ref_year)},
                                              {"semiannual", semiannual ? "true" : "false"}}};
        emit(render_density_csv(series, meta), out_path);
        return 0;
    }
};

struct NlsmmFitCmd {
    std::string density_path, target_path, out_path, emit_model_path;
    std::vector<int> dt_grid;
    std::uint64_t seed = 0;

    int run() const {
        const DensitySeries density = load_density_csv(density_path);
        const std::vector<DerivativeSeries> targets = load_series(target_path);
        NlsmmOptions options;
        if (!dt_grid.empty()) options.dt_grid_months = dt_grid;

        std::vector<LabeledFit> fits;
        for (const auto& target : targets) {
            fits.push_back({target.label, target.kind, nlsmm_fit(density, target, options)});
        }
        ReportMeta meta{"nlsmm-fit", seed, {{"density", density_path},
                                            {"target", target_path},
                                            {"dt_grid", joined(options.dt_grid_months)}}};
        if (!emit_model_path.empty()) {
            if (targets.size() != 1) {
                throw validation_error("--emit-model needs a target file with exactly one series");
            }
            const DerivativeSeries model = nlsmm_model_series(density, targets[0], fits[0].fit);
            write_text_file(emit_model_path, render_series_csv(model, meta));
        }
        emit(render_fit_report_json(fits, meta), out_path);
        return 0;
    }
};

struct WarnCmd {
    std::string model_path, rv_path, out_path;
    double f_max = 0.0;
    std::uint64_t seed = 0;

    int run() const {
        const std::vector<DerivativeSeries> series = load_series(model_path);
        if (series.size() != 1) {
            throw validation_error("--model-series must contain exactly one series");
        }
        WarningConfig config;
        config.reference = load_reference_series(rv_path);
        config.f_max = f_max;
        const WarningResult result = warning_signal(series[0], config);
        ReportMeta meta{"warn", seed, {{"model_series", model_path},
                                       {"rv", rv_path},
                                       {"fmax", format_sig(f_max)}}};
        emit(render_warning_json(result, f_max, meta), out_path);
        return 0;
    }
};

struct GkpCmd {
    std::string trade_path, merge_path, out_path;
    std::uint64_t seed = 0;

    int run() const {
        const auto by_year = load_edge_records_by_year(trade_path);
        std::vector<std::pair<std::string, std::string>> merge_map;
        if (!merge_path.empty()) merge_map = load_merge_map(merge_path);
        const std::vector<FlowNetwork> nets = networks_by_year(by_year, merge_map);

        // Score the nodes present in every year.
        std::set<std::string> common(nets.front().nodes().begin(), nets.front().nodes().end());
        for (const auto& net : nets) {
            std::set<std::string> year_nodes(net.nodes().begin(), net.nodes().end());
            std::set<std::string> kept;
            std::set_intersection(common.begin(), common.end(), year_nodes.begin(),
                                  year_nodes.end(), std::inserter(kept, kept.begin()));
            common = std::move(kept);
        }
        if (common.empty()) {
            throw validation_error("gkp: no node is present in every year of " + trade_path);
        }
        const GkpSeries series =
            gkp_series(nets, std::vector<std::string>(common.begin(), common.end()));
        ReportMeta meta{"gkp", seed, {{"trade", trade_path}, {"merge", merge_path}}};
        emit(render_gkp_csv(series, meta), out_path);
        return 0;
    }
};

struct CorrelateCmd {
    std::string gkp_path, trade_path, gdp_path, merge_path, out_path;
    bool absolute_change = false;
    std::uint64_t seed = 0;

    int run() const {
        const GkpSeries gkp = load_gkp_csv(gkp_path);
        const auto by_year = load_edge_records_by_year(trade_path);
        std::vector<std::pair<std::string, std::string>> merge_map;
        if (!merge_path.empty()) merge_map = load_merge_map(merge_path);
        const std::vector<FlowNetwork> nets = networks_by_year(by_year, merge_map);
        const auto gdp = load_gdp(gdp_path);

        std::map<int, const FlowNetwork*> net_by_year;
        for (const auto& net : nets) net_by_year[*net.year()] = &net;

        std::vector<CorrelationRow> rows;
        for (std::size_t k = 0; k < gkp.nodes.size(); ++k) {
            const std::string& country = gkp.nodes[k];
            const auto gdp_it = gdp.find(country);
            if (gdp_it == gdp.end()) {
                throw validation_error("correlate: no GDP series for country '" + country + "'");
            }
            std::vector<double> g, imports, exports, change;
            for (std::size_t y = 0; y < gkp.years.size(); ++y) {
                const int year = gkp.years[y];
                const auto net_it = net_by_year.find(year);
                const auto g0 = gdp_it->second.find(year - 1);
                const auto g1 = gdp_it->second.find(year);
                if (net_it == net_by_year.end() || g0 == gdp_it->second.end() ||
                    g1 == gdp_it->second.end()) {
                    continue;  // year not covered by all three sources
                }
                const auto idx = net_it->second->node_index(country);
                if (!idx) {
                    throw validation_error("correlate: country '" + country +
                                           "' missing from trade network in " +
                                           std::to_string(year));
                }
                g.push_back(gkp.g[k][y]);
                imports.push_back(net_it->second->in_flow(*idx));
                exports.push_back(net_it->second->out_flow(*idx));
                change.push_back(absolute_change ? g1->second - g0->second
                                                 : (g1->second - g0->second) / g0->second);
            }
            if (g.size() < 3) {
                throw validation_error("correlate: fewer than 3 aligned years for country '" +
                                       country + "'");
            }
            rows.push_back(correlate_gdp(country, g, imports, exports, change));
        }
        ReportMeta meta{"correlate", seed, {{"gkp", gkp_path},
                                            {"trade", trade_path},
                                            {"gdp", gdp_path},
                                            {"merge", merge_path},
                                            {"change", absolute_change ? "absolute" : "percent"}}};
        emit(render_correlation_csv(rows, meta), out_path);
        return 0;
    }
};

struct SynthCmd {
    std::string kind, out_dir;
    std::uint64_t seed = 0;
    int years = 0;       // 0 keeps the per-kind default
    int first_year = 0;  // likewise
    PanelSynthSpec panel;
    PinSynthSpec pin;
    TradeSynthSpec trade;

    int run() {
        using nlohmann::json;
        if (years > 0) panel.years = pin.years = trade.years = years;
        if (first_year > 0) panel.first_year = pin.first_year = trade.first_year = first_year;
        ReportMeta meta{"synth", seed, {{"kind", kind}, {"seed", std::to_string(seed)}}};
        json truth;
        truth["seed"] = seed;
        truth["kind"] = kind;

        if (kind == "panel") {
            const PanelSynthResult r = synth_panel(panel, seed);
            write_text_file(out_dir + "/panel.csv", render_panel_data_csv(r.records, meta));
            json relations = json::array();
            for (const auto& rel : r.relations) {
                relations.push_back({{"regressand", rel.regressand.str()},
                                     {"regressor", rel.regressor.str()},
                                     {"beta", rel.beta},
                                     {"intercept", rel.intercept}});
            }
            json noise_ids = json::array();
            for (const auto& id : r.noise_ids) noise_ids.push_back(id.str());
            truth["relations"] = relations;
            truth["noise_regressands"] = noise_ids;
            truth["noise_level"] = panel.noise;
        } else if (kind == "pin") {
            const PinSynthResult r = synth_pin(pin, seed);
            write_text_file(out_dir + "/holdings.csv", render_edges_data_csv(r.networks, meta));
            const DensitySeries density =
                build_density_series(r.networks, r.core_min, pin.first_year);
            const NlsmmTargetResult target = synth_nlsmm_target(density, NlsmmTargetSpec{});
            write_text_file(out_dir + "/target.csv",
                            render_series_data_csv(target.target, meta));
            truth["periphery_weight"] = r.periphery_weight;
            truth["core_min"] = r.core_min;
            truth["percolation_range"] = {r.periphery_weight, r.core_min};
            truth["core_density"] = r.core_density;
            const NlsmmTargetSpec spec{};
            truth["nlsmm"] = {{"gamma1", spec.gamma1},
                              {"gamma2", spec.gamma2},
                              {"delta_t", spec.delta_t_months},
                              {"a_r_planted", spec.a_r},
                              {"a_r_effective", target.a_r_effective}};
        } else if (kind == "trade") {
            const TradeSynthResult r = synth_trade(trade, seed);
            write_text_file(out_dir + "/trade.csv", render_edges_data_csv(r.networks, meta));
            write_text_file(out_dir + "/gdp.csv", render_gdp_data_csv(r.gdp, meta));
            truth["focal"] = r.focal;
            truth["focal_gkp"] = "strictly decreasing";
            truth["focal_corr_gkp"] = 1.0;
        } else {
            throw validation_error("unknown synth kind '" + kind + "'");
        }
        write_text_file(out_dir + "/truth.json", truth.dump(2) + "\n");
        std::cout << "synth " << kind << ": files written to " << out_dir << "\n";
        return 0;
    }
};

struct ValidateCmd {
    std::string file_path, format, out_path;
    std::uint64_t seed = 0;

    int run() const {
        const ValidationReport report = validate_file(file_path, file_format_from_string(format));
        ReportMeta meta{"validate", seed, {{"file", file_path}, {"format", format}}};
        emit(render_validation_json(report, meta), out_path);
        return report.ok() ? 0 : kExitValidation;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"econet — network econometrics of trade flows, investment positions and "
                 "balance-of-payments indicators"};
    app.require_subcommand(1);
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "Seed for synthetic data; echoed into every report")
        ->capture_default_str();

    FitBopCmd fit_bop;
    auto* fit = app.add_subcommand("fit-bop", "Fit the balance-of-payments coefficient network");
    fit->add_option("--panel", fit_bop.panel_path, "Panel CSV (country,account,direction,year,value_usd)")
        ->required();
    fit->add_option("--deflator", fit_bop.deflator_path, "Deflator CSV (year,deflator)");
    fit->add_option("--base-year", fit_bop.base_year, "Deflation base year");
    fit->add_flag("--holdout-last", fit_bop.holdout_last, "Hold the last panel year out of the fit");
    fit->add_option("--alpha", fit_bop.criteria.alpha, "t/F significance level")->capture_default_str();
    fit->add_option("--max-error", fit_bop.criteria.max_mean_error, "Mean relative error bound")
        ->capture_default_str();
    fit->add_option("--max-cond", fit_bop.criteria.max_condition, "Condition number bound")
        ->capture_default_str();
    fit->add_option("--max-vif", fit_bop.criteria.max_vif, "VIF bound")->capture_default_str();
    fit->add_option("--gdp", fit_bop.gdp_path, "Optional GDP CSV for node annotations");
    fit->add_option("--out", fit_bop.out_dir, "Output directory (gbopn.json, scatter.csv)")
        ->required();

    ForecastCmd forecast_cmd;
    auto* fc = app.add_subcommand("forecast", "One-step forecast with a fitted model");
    fc->add_option("--model", forecast_cmd.model_path, "gbopn.json from fit-bop")->required();
    fc->add_option("--panel", forecast_cmd.panel_path, "Panel CSV")->required();
    fc->add_option("--from-year", forecast_cmd.from_year, "Predict from this year to the next")
        ->required();
    fc->add_option("--out", forecast_cmd.out_path, "Report path (default stdout)");

    TrackCmd track_cmd;
    auto* tr = app.add_subcommand("track", "Shortest tracking path between two indicators");
    tr->add_option("--model", track_cmd.model_path, "gbopn.json from fit-bop")->required();
    tr->add_option("--source", track_cmd.source, "Source indicator id (country:account:direction)")
        ->required();
    tr->add_option("--target", track_cmd.target, "Target indicator id")->required();
    tr->add_option("--out", track_cmd.out_path, "Report path (default stdout)");

    PinDensityCmd pin_cmd;
    auto* pd = app.add_subcommand("pin-density", "Edge density of the thresholded largest SCC per year");
    pd->add_option("--holdings", pin_cmd.holdings_path, "Holdings edge-list CSV")->required();
    pd->add_option("--threshold", pin_cmd.threshold, "Working edge threshold, USD")
        ->capture_default_str();
    pd->add_option("--ref-year", pin_cmd.ref_year, "Normalization reference year")->required();
    pd->add_flag("--semiannual", pin_cmd.semiannual, "Resample to 6-month spacing");
    pd->add_option("--out", pin_cmd.out_path, "Report path (default stdout)");

    NlsmmFitCmd nlsmm_cmd;
    auto* nf = app.add_subcommand("nlsmm-fit", "Fit the short-term memory model to derivative series");
    nf->add_option("--density", nlsmm_cmd.density_path, "Density CSV (time,rho)")->required();
    nf->add_option("--target", nlsmm_cmd.target_path, "Series CSV (time,kind,label,value_usd)")
        ->required();
    nf->add_option("--dt-grid", nlsmm_cmd.dt_grid, "Lead/lag candidates in months")
        ->delimiter(',');
    nf->add_option("--emit-model", nlsmm_cmd.emit_model_path,
                   "Also write the best-fit model series CSV here");
    nf->add_option("--out", nlsmm_cmd.out_path, "Report path (default stdout)");

    WarnCmd warn_cmd;
    auto* wn = app.add_subcommand("warn", "Warning times where a series exceeds f_max * reference");
    wn->add_option("--model-series", warn_cmd.model_path, "Series CSV with one series")->required();
    wn->add_option("--rv", warn_cmd.rv_path, "Reference variable CSV (time,value_usd)")->required();
    wn->add_option("--fmax", warn_cmd.f_max, "Warning multiplier")->required();
    wn->add_option("--out", warn_cmd.out_path, "Report path (default stdout)");

    GkpCmd gkp_cmd;
    auto* gk = app.add_subcommand("gkp", "Gate-keeping potential per country and year");
    gk->add_option("--trade", gkp_cmd.trade_path, "Trade edge-list CSV")->required();
    gk->add_option("--merge", gkp_cmd.merge_path, "Node merge map CSV (member,group)");
    gk->add_option("--out", gkp_cmd.out_path, "Report path (default stdout)");

    CorrelateCmd corr_cmd;
    auto* co = app.add_subcommand("correlate", "GDP-change correlations vs GKP, imports, exports");
    co->add_option("--gkp", corr_cmd.gkp_path, "GKP series CSV from the gkp command")->required();
    co->add_option("--trade", corr_cmd.trade_path, "Trade edge-list CSV")->required();
    co->add_option("--gdp", corr_cmd.gdp_path, "GDP CSV (country,year,gdp_usd)")->required();
    co->add_option("--merge", corr_cmd.merge_path, "Node merge map CSV");
    co->add_flag("--absolute-change", corr_cmd.absolute_change,
                 "Use absolute instead of percentage GDP change");
    co->add_option("--out", corr_cmd.out_path, "Report path (default stdout)");

    SynthCmd synth_cmd;
    auto* sy = app.add_subcommand("synth", "Generate synthetic data with planted ground truth");
    sy->add_option("--kind", synth_cmd.kind, "panel | pin | trade")->required();
    sy->add_option("--out", synth_cmd.out_dir, "Output directory")->required();
    sy->add_option("--indicators", synth_cmd.panel.indicators)->capture_default_str();
    sy->add_option("--years", synth_cmd.years, "Years of data (default per kind)");
    sy->add_option("--first-year", synth_cmd.first_year, "First calendar year (default per kind)");
    sy->add_option("--relations", synth_cmd.panel.relations)->capture_default_str();
    sy->add_option("--noise-regressands", synth_cmd.panel.noise_regressands)->capture_default_str();
    sy->add_option("--noise", synth_cmd.panel.noise)->capture_default_str();
    sy->add_option("--core", synth_cmd.pin.core)->capture_default_str();
    sy->add_option("--periphery", synth_cmd.pin.periphery)->capture_default_str();
    sy->add_option("--periphery-weight", synth_cmd.pin.periphery_weight)->capture_default_str();
    sy->add_option("--core-min", synth_cmd.pin.core_min)->capture_default_str();
    sy->add_option("--core-max", synth_cmd.pin.core_max)->capture_default_str();
    sy->add_option("--scale", synth_cmd.pin.scale, "Weight scale factor (1e6 for USD millions)")
        ->capture_default_str();
    sy->add_option("--countries", synth_cmd.trade.countries)->capture_default_str();

    ValidateCmd validate_cmd;
    auto* va = app.add_subcommand("validate", "Schema/consistency check of an input file");
    va->add_option("--file", validate_cmd.file_path, "File to validate")->required();
    va->add_option("--format", validate_cmd.format, "panel | edges | series")->required();
    va->add_option("--out", validate_cmd.out_path, "Report path (default stdout)");

    // Let `--seed` appear after the subcommand name as well.
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (fit->parsed()) {
            fit_bop.seed = seed;
            return fit_bop.run();
        }
        if (fc->parsed()) {
            forecast_cmd.seed = seed;
            return forecast_cmd.run();
        }
        if (tr->parsed()) {
            track_cmd.seed = seed;
            return track_cmd.run();
        }
        if (pd->parsed()) {
            pin_cmd.seed = seed;
            return pin_cmd.run();
        }
        if (nf->parsed()) {
            nlsmm_cmd.seed = seed;
            return nlsmm_cmd.run();
        }
        if (wn->parsed()) {
            warn_cmd.seed = seed;
            return warn_cmd.run();
        }
        if (gk->parsed()) {
            gkp_cmd.seed = seed;
            return gkp_cmd.run();
        }
        if (co->parsed()) {
            corr_cmd.seed = seed;
            return corr_cmd.run();
        }
        if (sy->parsed()) {
            synth_cmd.seed = seed;
            return synth_cmd.run();
        }
        if (va->parsed()) {
            validate_cmd.seed = seed;
            return validate_cmd.run();
        }
    } catch (const validation_error& e) {
        std::cerr << "econet: error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "econet: computation failed: " << e.what() << "\n";
        return kExitComputation;
    }
    return 0;
}
