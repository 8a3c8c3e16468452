#include "econet/nlsmm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "econet/percolation.hpp"
#include "econet/stats.hpp"

namespace econet {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

void DensitySeries::validate() const {
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i].rho > 0.0) || points[i].rho > 1.0) {
            throw validation_error("density series: rho out of (0, 1] at " + points[i].time.str());
        }
        if (i > 0 && !(points[i - 1].time < points[i].time)) {
            throw validation_error("density series: times must be strictly increasing");
        }
    }
}

std::vector<double> DensitySeries::normalized() const {
    validate();
    auto it = std::find_if(points.begin(), points.end(),
                           [&](const DensityPoint& p) { return p.time == reference; });
    if (it == points.end()) {
        throw validation_error("density series: reference time " + reference.str() +
                               " not present");
    }
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(p.rho / it->rho);
    return out;
}

std::string to_string(SeriesKind k) { return k == SeriesKind::noa ? "NOA" : "GMV"; }

SeriesKind series_kind_from_string(const std::string& s) {
    if (s == "NOA" || s == "noa") return SeriesKind::noa;
    if (s == "GMV" || s == "gmv") return SeriesKind::gmv;
    throw validation_error("unknown series kind '" + s + "' (expected NOA or GMV)");
}

void DerivativeSeries::validate() const {
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].value < 0.0 || !std::isfinite(points[i].value)) {
            throw validation_error("series '" + label + "': negative or non-finite value at " +
                                   points[i].time.str());
        }
        if (i > 0 && !(points[i - 1].time < points[i].time)) {
            throw validation_error("series '" + label + "': times must be strictly increasing");
        }
    }
}

DensitySeries build_density_series(const std::vector<FlowNetwork>& yearly_networks, double e_th,
                                   int reference_year) {
    if (yearly_networks.empty()) throw validation_error("density series: no networks");
    std::map<int, const FlowNetwork*> by_year;
    for (const auto& net : yearly_networks) {
        if (!net.year()) throw validation_error("density series: network without a year label");
        if (!by_year.emplace(*net.year(), &net).second) {
            throw validation_error("density series: duplicate year " + std::to_string(*net.year()));
        }
    }
    if (!by_year.count(reference_year)) {
        throw validation_error("density series: reference year " + std::to_string(reference_year) +
                               " not present");
    }
    DensitySeries series;
    series.threshold_used = e_th;
    series.reference = YearMonth{reference_year, 12};
    for (const auto& [year, net] : by_year) {
        const FlowNetwork scc = largest_scc(threshold_filter(*net, e_th));
        if (scc.node_count() < 2) {
            throw computation_error("density series: SCC below 2 nodes in year " +
                                    std::to_string(year));
        }
        series.points.push_back({YearMonth{year, 12}, edge_density(scc)});
    }
    series.validate();
    return series;
}

DensitySeries resample_density(const DensitySeries& series) {
    series.validate();
    if (series.points.size() < 2) {
        throw validation_error("resample: need at least 2 density points");
    }
    DensitySeries out;
    out.threshold_used = series.threshold_used;
    out.reference = series.reference;

    const auto& pts = series.points;
    const int first = pts.front().time.index();
    const int last = pts.back().time.index();
    std::size_t seg = 0;
    for (int idx = first; idx <= last; idx += 6) {
        while (seg + 1 < pts.size() && pts[seg + 1].time.index() < idx) ++seg;
        const int t0 = pts[seg].time.index();
        const int t1 = pts[seg + 1].time.index();
        double rho;
        if (idx == t0) {
            rho = pts[seg].rho;
        } else if (idx == t1) {
            rho = pts[seg + 1].rho;
        } else {
            const double w = static_cast<double>(idx - t0) / static_cast<double>(t1 - t0);
            rho = pts[seg].rho + w * (pts[seg + 1].rho - pts[seg].rho);
        }
        out.points.push_back({YearMonth::from_index(idx), rho});
    }
    return out;
}

std::vector<SeriesPoint> nlsmm_eval(const std::vector<DensityPoint>& rho_bar, double a_r,
                                    double gamma1, double gamma2, double v_r) {
    if (rho_bar.size() < 2) {
        throw std::invalid_argument("nlsmm_eval: need at least 2 density points");
    }
    for (const auto& p : rho_bar) {
        if (!(p.rho > 0.0)) {
            throw computation_error("nlsmm_eval: normalized density must be > 0 at " +
                                    p.time.str());
        }
    }
    std::vector<SeriesPoint> out;
    out.reserve(rho_bar.size() - 1);
    for (std::size_t i = 1; i < rho_bar.size(); ++i) {
        const double v =
            v_r * a_r * (std::pow(rho_bar[i].rho, gamma1) + std::pow(rho_bar[i - 1].rho, gamma2));
        out.push_back({rho_bar[i].time, v});
    }
    return out;
}

std::string to_string(FitVerdict v) {
    switch (v) {
        case FitVerdict::accept: return "accept";
        case FitVerdict::maybe: return "maybe";
        case FitVerdict::reject: return "reject";
    }
    return "?";
}

FitVerdict verdict_for(double p_r) {
    if (p_r >= 0.9) return FitVerdict::accept;
    if (p_r >= 0.85) return FitVerdict::maybe;
    return FitVerdict::reject;  // includes NaN
}

namespace {

/// One lead/lag candidate prepared for fitting: target ratios w_n and the
/// normalized densities entering both model terms.
struct AlignedSeries {
    std::vector<int> time_index;   // month indices of the fitted points
    std::vector<double> rho_now;   // rho_bar(t_n)
    std::vector<double> rho_prev;  // rho_bar(t_{n-1})
    std::vector<double> target_ratio;  // V(t_n) / V_r
    double v_r = 0.0;
    int n() const { return static_cast<int>(rho_now.size()); }
};

std::optional<AlignedSeries> align_for_dt(const DensitySeries& density,
                                          const DerivativeSeries& target, int dt_months,
                                          int min_overlap) {
    // Positive dt: density leads, so the density observation from t - dt
    // drives the derivative value at t.
    std::map<int, double> rho_at;  // by shifted month index
    for (const auto& p : density.points) rho_at[p.time.index() + dt_months] = p.rho;

    std::vector<int> times;
    std::vector<double> values;
    for (const auto& p : target.points) {
        const int t = p.time.index();
        if (p.value <= 0.0) continue;  // relative errors need positive data
        if (rho_at.count(t) && rho_at.count(t - 6)) {
            times.push_back(t);
            values.push_back(p.value);
        }
    }
    if (static_cast<int>(times.size()) < min_overlap) return std::nullopt;

    AlignedSeries a;
    a.time_index = times;
    a.v_r = values.front();
    const double rho_ref = rho_at.at(times.front());
    for (std::size_t i = 0; i < times.size(); ++i) {
        a.rho_now.push_back(rho_at.at(times[i]) / rho_ref);
        a.rho_prev.push_back(rho_at.at(times[i] - 6) / rho_ref);
        a.target_ratio.push_back(values[i] / a.v_r);
    }
    return a;
}

DensitySeries to_semiannual(const DensitySeries& density) {
    DensitySeries semi = density;
    if (semi.points.size() >= 2) {
        int min_gap = std::numeric_limits<int>::max();
        for (std::size_t i = 1; i < semi.points.size(); ++i) {
            min_gap = std::min(min_gap,
                               semi.points[i].time.index() - semi.points[i - 1].time.index());
        }
        if (min_gap > 6) semi = resample_density(semi);
    }
    return semi;
}

double relative_sse(const AlignedSeries& a, double a_r, double g1, double g2) {
    double sse = 0.0;
    for (int i = 0; i < a.n(); ++i) {
        const double model = a_r * (std::pow(a.rho_now[i], g1) + std::pow(a.rho_prev[i], g2));
        const double r = model / a.target_ratio[i] - 1.0;
        sse += r * r;
    }
    return sse;
}

struct GridBest {
    double sse = kInf;
    double a = 0.0, g1 = 0.0, g2 = 0.0;
};

GridBest coarse_grid_search(const AlignedSeries& a, const NlsmmOptions& opt) {
    const int n = a.n();
    const int n_gamma =
        static_cast<int>(std::round((opt.gamma_max - opt.gamma_min) / opt.gamma_step)) + 1;
    const int n_a = static_cast<int>(std::round((opt.a_max - opt.a_min) / opt.a_step)) + 1;

    // pow tables: rows = gamma grid, cols = sample points.
    std::vector<double> pow_now(static_cast<std::size_t>(n_gamma) * n);
    std::vector<double> pow_prev(static_cast<std::size_t>(n_gamma) * n);
    std::vector<double> gammas(n_gamma);
    for (int g = 0; g < n_gamma; ++g) {
        gammas[g] = opt.gamma_min + g * opt.gamma_step;
        for (int i = 0; i < n; ++i) {
            pow_now[static_cast<std::size_t>(g) * n + i] = std::pow(a.rho_now[i], gammas[g]);
            pow_prev[static_cast<std::size_t>(g) * n + i] = std::pow(a.rho_prev[i], gammas[g]);
        }
    }
    std::vector<double> inv_w(n);
    for (int i = 0; i < n; ++i) inv_w[i] = 1.0 / a.target_ratio[i];

    GridBest best;
    for (int g1 = 0; g1 < n_gamma; ++g1) {
        const double* p1 = &pow_now[static_cast<std::size_t>(g1) * n];
        for (int g2 = 0; g2 < n_gamma; ++g2) {
            const double* p2 = &pow_prev[static_cast<std::size_t>(g2) * n];
            // SSE(a) = a^2 * sum u^2 - 2 a * sum u + n with u_i = z_i / w_i.
            double su = 0.0, suu = 0.0;
            for (int i = 0; i < n; ++i) {
                const double u = (p1[i] + p2[i]) * inv_w[i];
                su += u;
                suu += u * u;
            }
            for (int ai = 0; ai < n_a; ++ai) {
                const double av = opt.a_min + ai * opt.a_step;
                const double sse = av * av * suu - 2.0 * av * su + n;
                if (sse < best.sse) {
                    best = {sse, av, gammas[g1], gammas[g2]};
                }
            }
        }
    }
    return best;
}

GridBest refine(const AlignedSeries& a, const NlsmmOptions& opt, GridBest start) {
    // Coordinate pattern search with shrinking steps; a_r kept positive.
    double step_a = opt.a_step / 2.0;
    double step_g = opt.gamma_step / 2.0;
    GridBest cur = start;
    cur.sse = relative_sse(a, cur.a, cur.g1, cur.g2);
    while (step_a > 1e-8 || step_g > 1e-8) {
        bool improved = false;
        const double trials[][3] = {
            {cur.a + step_a, cur.g1, cur.g2}, {cur.a - step_a, cur.g1, cur.g2},
            {cur.a, cur.g1 + step_g, cur.g2}, {cur.a, cur.g1 - step_g, cur.g2},
            {cur.a, cur.g1, cur.g2 + step_g}, {cur.a, cur.g1, cur.g2 - step_g},
        };
        for (const auto& t : trials) {
            if (!(t[0] > 1e-9)) continue;
            const double sse = relative_sse(a, t[0], t[1], t[2]);
            if (sse < cur.sse) {
                cur = {sse, t[0], t[1], t[2]};
                improved = true;
            }
        }
        if (!improved) {
            step_a /= 2.0;
            step_g /= 2.0;
        }
    }
    return cur;
}

}  // namespace

NlsmmFit nlsmm_fit(const DensitySeries& density, const DerivativeSeries& target,
                   const NlsmmOptions& options) {
    density.validate();
    target.validate();
    if (options.dt_grid_months.empty()) throw validation_error("nlsmm_fit: empty lead/lag grid");
    for (int dt : options.dt_grid_months) {
        if (dt % 6 != 0) {
            throw validation_error("nlsmm_fit: lead/lag values must be multiples of 6 months");
        }
    }

    // Bring annual density data onto the semiannual grid; interpolation acts
    // on rho, before any exponentiation.
    const DensitySeries semi = to_semiannual(density);

    bool any_overlap = false;
    NlsmmFit best;
    double best_pr = -kInf;
    for (int dt : options.dt_grid_months) {
        const auto aligned = align_for_dt(semi, target, dt, options.min_overlap);
        if (!aligned) continue;
        any_overlap = true;

        GridBest fit = refine(*aligned, options, coarse_grid_search(*aligned, options));

        std::vector<double> model(aligned->n());
        for (int i = 0; i < aligned->n(); ++i) {
            model[i] = fit.a * (std::pow(aligned->rho_now[i], fit.g1) +
                                std::pow(aligned->rho_prev[i], fit.g2));
        }
        const double pr = pearson_or_nan(model, aligned->target_ratio);
        if (!std::isnan(pr) && pr > best_pr) {
            best_pr = pr;
            best.a_r = fit.a;
            best.gamma1 = fit.g1;
            best.gamma2 = fit.g2;
            best.delta_t_months = dt;
            best.p_r = pr;
            best.relative_sse = fit.sse;
            best.points_used = aligned->n();
        }
    }
    if (!any_overlap) {
        throw computation_error("nlsmm_fit: insufficient overlap between density and '" +
                                target.label + "' at every lead/lag");
    }
    if (best_pr == -kInf) {
        // Overlap existed but every candidate produced a degenerate model.
        best.p_r = kNaN;
    }
    best.memory_ratio = best.gamma1 > 0.0 ? best.gamma2 / best.gamma1 : kNaN;
    best.verdict = verdict_for(best.p_r);
    return best;
}

DerivativeSeries nlsmm_model_series(const DensitySeries& density, const DerivativeSeries& target,
                                    const NlsmmFit& fit) {
    const DensitySeries semi = to_semiannual(density);
    const auto aligned = align_for_dt(semi, target, fit.delta_t_months, 2);
    if (!aligned) {
        throw computation_error("nlsmm_model_series: no overlap at the fitted lead/lag");
    }
    DerivativeSeries out;
    out.kind = target.kind;
    out.label = target.label;
    for (int i = 0; i < aligned->n(); ++i) {
        const double v = aligned->v_r * fit.a_r *
                         (std::pow(aligned->rho_now[i], fit.gamma1) +
                          std::pow(aligned->rho_prev[i], fit.gamma2));
        out.points.push_back({YearMonth::from_index(aligned->time_index[i]), v});
    }
    return out;
}

WarningResult warning_signal(const DerivativeSeries& model, const WarningConfig& config) {
    model.validate();
    if (!(config.f_max > 0.0)) throw validation_error("warning: f_max must be > 0");
    std::map<int, double> rv;
    for (const auto& p : config.reference) {
        if (!(p.value > 0.0)) {
            throw validation_error("warning: reference variable must be positive at " +
                                   p.time.str());
        }
        rv[p.time.index()] = p.value;
    }
    WarningResult result;
    for (const auto& p : model.points) {
        auto it = rv.find(p.time.index());
        if (it == rv.end()) continue;
        ++result.compared_points;
        if (p.value > config.f_max * it->second) {
            result.warnings.push_back(p.time);
            if (!result.first) result.first = p.time;
        }
    }
    if (result.compared_points == 0) {
        throw validation_error("warning: model and reference series have disjoint time grids");
    }
    return result;
}

}  // namespace econet
