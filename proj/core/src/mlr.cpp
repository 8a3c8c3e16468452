#include "econet/mlr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "econet/stats.hpp"

namespace econet {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

void FitCriteria::validate() const {
    if (!(alpha > 0.0) || alpha >= 0.5) throw validation_error("criteria: alpha must be in (0, 0.5)");
    if (!(max_mean_error > 0.0)) throw validation_error("criteria: max_mean_error must be > 0");
    if (!(max_condition > 0.0)) throw validation_error("criteria: max_condition must be > 0");
    if (!(max_vif > 0.0)) throw validation_error("criteria: max_vif must be > 0");
}

std::string to_string(RowStatus s) {
    switch (s) {
        case RowStatus::accepted: return "accepted";
        case RowStatus::rejected: return "rejected";
        case RowStatus::unfittable: return "unfittable";
    }
    return "?";
}

RowStatus row_status_from_string(const std::string& s) {
    if (s == "accepted") return RowStatus::accepted;
    if (s == "rejected") return RowStatus::rejected;
    if (s == "unfittable") return RowStatus::unfittable;
    throw validation_error("unknown row status '" + s + "'");
}

const RowFit* CoefficientNetwork::row(const IndicatorId& id) const {
    const auto idx = index_of(id);
    return idx ? &rows[*idx] : nullptr;
}

std::optional<int> CoefficientNetwork::index_of(const IndicatorId& id) const {
    auto it = std::lower_bound(ids.begin(), ids.end(), id);
    if (it == ids.end() || *it != id) return std::nullopt;
    return static_cast<int>(it - ids.begin());
}

namespace {

struct FitWindow {
    int first_t = 0;  // regressor years run first_t .. last_t
    int last_t = 0;   // regressand years run first_t+1 .. last_t+1
    int samples() const { return last_t - first_t + 1; }
};

FitWindow fit_window(const IndicatorPanel& panel, bool holdout_last_year) {
    FitWindow w;
    w.first_t = panel.first_year();
    w.last_t = panel.last_year() - 1 - (holdout_last_year ? 1 : 0);
    return w;
}

bool usable_in_window(const IndicatorPanel& panel, int indicator, const FitWindow& w) {
    // Any missing year inside the fit window excludes an indicator from both
    // the regressand and regressor roles.
    return panel.complete_over(indicator, w.first_t, w.last_t + 1);
}

Eigen::VectorXd column_at_lag(const IndicatorPanel& panel, int indicator, const FitWindow& w,
                              int lag_years) {
    Eigen::VectorXd col(w.samples());
    for (int t = w.first_t; t <= w.last_t; ++t) {
        col[t - w.first_t] = panel.value(indicator, t + lag_years);
    }
    return col;
}

/// The model tests of Fig.-3 steps 3-4 for a given support set.
struct ModelCheck {
    OlsResult ols;
    bool significant = false;  // every regressor t p-value <= alpha
    bool collinear_ok = false; // VIF and condition number within bounds
};

ModelCheck fit_model(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                     const FitCriteria& criteria) {
    ModelCheck check;
    check.ols = ols_fit(X, y);
    check.significant = (check.ols.t_pvalues.array() <= criteria.alpha).all();
    if (X.cols() >= 2) {
        const Eigen::VectorXd v = vif(X);
        // An infinite VIF (perfect collinearity) counts as exceeding the bound.
        const bool vif_ok = (v.array() <= criteria.max_vif).all();
        const bool cond_ok = condition_number(X) <= criteria.max_condition;
        check.collinear_ok = vif_ok && cond_ok;
    } else {
        check.collinear_ok = true;
    }
    return check;
}

}  // namespace

RowFit stepwise_fit(const IndicatorPanel& panel, int regressand, const FitCriteria& criteria,
                    bool holdout_last_year) {
    criteria.validate();
    if (regressand < 0 || regressand >= panel.indicator_count()) {
        throw std::invalid_argument("stepwise_fit: regressand index out of range");
    }
    RowFit row;
    row.regressand = regressand;

    const FitWindow window = fit_window(panel, holdout_last_year);
    const int n = window.samples();
    row.sample_count = n;
    if (n < 4) {
        row.status = RowStatus::unfittable;
        row.note = "insufficient sample (fewer than 4 usable years)";
        return row;
    }
    if (!usable_in_window(panel, regressand, window)) {
        row.status = RowStatus::unfittable;
        row.note = "missing data in fit window";
        return row;
    }

    const Eigen::VectorXd y = column_at_lag(panel, regressand, window, 1);

    // Step 1: simple regression on every other complete lagged series.
    std::vector<CandidateDiag> diags;
    for (int j = 0; j < panel.indicator_count(); ++j) {
        if (j == regressand || !usable_in_window(panel, j, window)) continue;
        Eigen::MatrixXd X = column_at_lag(panel, j, window, 0);
        CandidateDiag d;
        d.candidate = j;
        try {
            const OlsResult slr = ols_fit(X, y);
            d.slr_ssr = slr.ssr;
            d.slr_r2 = slr.r_squared;
            d.slr_pvalue = slr.t_pvalues[0];
        } catch (const computation_error&) {
            continue;  // constant or degenerate candidate series
        }
        diags.push_back(d);
    }
    std::sort(diags.begin(), diags.end(), [](const CandidateDiag& a, const CandidateDiag& b) {
        if (a.slr_ssr != b.slr_ssr) return a.slr_ssr < b.slr_ssr;
        return a.candidate < b.candidate;
    });
    row.step1 = diags;

    if (diags.empty()) {
        row.status = RowStatus::unfittable;
        row.note = "no usable candidate regressors";
        return row;
    }

    // Step 2: seed with the smallest-residuum candidate. Its simple
    // regression has the smallest t p-value of all candidates, so an
    // insignificant seed means every candidate fails.
    if (diags.front().slr_pvalue > criteria.alpha) {
        row.status = RowStatus::rejected;
        row.note = "no candidate passes the seed significance test";
        return row;
    }

    std::vector<int> support = {diags.front().candidate};
    auto build_design = [&](const std::vector<int>& cols) {
        Eigen::MatrixXd X(n, cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) {
            X.col(c) = column_at_lag(panel, cols[c], window, 0);
        }
        return X;
    };
    ModelCheck current = fit_model(build_design(support), y, criteria);

    // Steps 3-5: one pass over the remaining candidates, ascending residuum.
    for (std::size_t i = 1; i < diags.size(); ++i) {
        const int candidate = diags[i].candidate;
        if (static_cast<int>(support.size()) + 1 > n - 2) break;  // out of degrees of freedom
        std::vector<int> trial = support;
        trial.push_back(candidate);
        ModelCheck next;
        try {
            next = fit_model(build_design(trial), y, criteria);
        } catch (const computation_error&) {
            continue;  // exactly collinear addition
        }
        const bool error_reduced =
            next.ols.mean_relative_error < current.ols.mean_relative_error;
        if (error_reduced && next.significant && next.collinear_ok) {
            support = std::move(trial);
            current = std::move(next);
        }
    }

    // Step 6: accept or reject the final model.
    std::vector<std::size_t> order(support.size());
    for (std::size_t c = 0; c < order.size(); ++c) order[c] = c;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });
    for (std::size_t c : order) {
        RegressorTerm term;
        term.regressor = support[c];
        term.beta = current.ols.coefficients[static_cast<int>(c)];
        term.t_pvalue = current.ols.t_pvalues[static_cast<int>(c)];
        auto diag = std::find_if(diags.begin(), diags.end(), [&](const CandidateDiag& d) {
            return d.candidate == support[c];
        });
        term.edge_r2 = diag->slr_r2;
        row.terms.push_back(term);
    }
    row.intercept = current.ols.intercept;
    row.row_error = current.ols.mean_relative_error;
    row.f_pvalue = current.ols.f_pvalue;

    const bool accepted = current.ols.f_pvalue <= criteria.alpha &&
                          current.ols.mean_relative_error <= criteria.max_mean_error;
    if (accepted) {
        row.status = RowStatus::accepted;
    } else {
        row.status = RowStatus::rejected;
        row.note = current.ols.f_pvalue > criteria.alpha ? "final F-test failed"
                                                         : "mean relative error above bound";
        row.terms.clear();  // rejected rows carry no coefficients
        row.intercept = 0.0;
    }
    return row;
}

CoefficientNetwork fit_gbopn(const IndicatorPanel& panel, const FitCriteria& criteria,
                             bool holdout_last_year) {
    criteria.validate();
    CoefficientNetwork net;
    net.ids = panel.indicators();
    net.rows.reserve(net.ids.size());

    std::vector<double> accepted_errors;
    for (int i = 0; i < panel.indicator_count(); ++i) {
        RowFit row = stepwise_fit(panel, i, criteria, holdout_last_year);
        switch (row.status) {
            case RowStatus::accepted:
                ++net.summary.accepted;
                accepted_errors.push_back(row.row_error);
                break;
            case RowStatus::rejected: ++net.summary.rejected; break;
            case RowStatus::unfittable: ++net.summary.unfittable; break;
        }
        net.rows.push_back(std::move(row));
    }
    net.summary.indicators = panel.indicator_count();
    if (!accepted_errors.empty()) {
        double sum = 0.0;
        for (double e : accepted_errors) sum += e;
        net.summary.mean_error = sum / static_cast<double>(accepted_errors.size());
        std::sort(accepted_errors.begin(), accepted_errors.end());
        const std::size_t m = accepted_errors.size();
        net.summary.median_error = m % 2 == 1
                                       ? accepted_errors[m / 2]
                                       : 0.5 * (accepted_errors[m / 2 - 1] + accepted_errors[m / 2]);
    } else {
        net.summary.mean_error = kNaN;
        net.summary.median_error = kNaN;
    }
    return net;
}

ForecastReport forecast(const CoefficientNetwork& coeffs, const IndicatorPanel& panel,
                        int from_year) {
    if (from_year < panel.first_year() || from_year > panel.last_year()) {
        throw validation_error("forecast: from-year " + std::to_string(from_year) +
                               " outside the panel range");
    }
    ForecastReport report;
    report.from_year = from_year;
    for (const RowFit& row : coeffs.rows) {
        if (row.status != RowStatus::accepted) continue;
        const IndicatorId& id = coeffs.ids[row.regressand];
        double predicted = row.intercept;
        bool ok = true;
        std::string reason;
        for (const RegressorTerm& term : row.terms) {
            const auto idx = panel.index_of(coeffs.ids[term.regressor]);
            const auto v = idx ? panel.value_opt(*idx, from_year) : std::nullopt;
            if (!v) {
                ok = false;
                reason = "regressor " + coeffs.ids[term.regressor].str() + " missing at " +
                         std::to_string(from_year);
                break;
            }
            predicted += term.beta * *v;
        }
        if (!ok) {
            report.skipped.emplace_back(id, reason);
            continue;
        }
        ForecastRow out;
        out.id = id;
        out.predicted = predicted;
        const auto own = panel.index_of(id);
        const auto actual = own ? panel.value_opt(*own, from_year + 1) : std::nullopt;
        if (actual) {
            out.actual = *actual;
            if (*actual != 0.0) out.rel_error = std::fabs(predicted - *actual) / std::fabs(*actual);
        }
        report.rows.push_back(std::move(out));
    }
    return report;
}

TrackingScore tracking_centrality(const CoefficientNetwork& coeffs,
                                  std::span<const double> sizes) {
    if (sizes.size() != coeffs.ids.size()) {
        throw std::invalid_argument("tracking_centrality: size vector does not match network ids");
    }
    TrackingScore score;
    score.sizes.assign(sizes.begin(), sizes.end());
    score.centrality.assign(coeffs.ids.size(), 0.0);
    for (const RowFit& row : coeffs.rows) {
        if (row.status != RowStatus::accepted) continue;
        for (const RegressorTerm& term : row.terms) {
            if (!(sizes[row.regressand] >= 0.0)) {
                throw std::invalid_argument("tracking_centrality: sizes must be non-negative");
            }
            TrackingScore::EdgeValue e;
            e.regressor = term.regressor;
            e.regressand = row.regressand;
            e.value = std::sqrt(term.edge_r2) * sizes[row.regressand];
            score.centrality[term.regressor] += e.value;
            score.edges.push_back(e);
        }
    }
    std::sort(score.edges.begin(), score.edges.end(),
              [](const TrackingScore::EdgeValue& a, const TrackingScore::EdgeValue& b) {
                  if (a.regressor != b.regressor) return a.regressor < b.regressor;
                  return a.regressand < b.regressand;
              });
    return score;
}

PathTrack path_track(const CoefficientNetwork& coeffs, const IndicatorId& source,
                     const IndicatorId& target) {
    const int n = static_cast<int>(coeffs.ids.size());
    // Edges point from regressor to regressand across accepted rows.
    std::vector<std::vector<int>> out(n);
    std::vector<char> member(n, 0);
    for (const RowFit& row : coeffs.rows) {
        if (row.status != RowStatus::accepted) continue;
        for (const RegressorTerm& term : row.terms) {
            out[term.regressor].push_back(row.regressand);
            member[term.regressor] = member[row.regressand] = 1;
        }
    }
    for (auto& edges : out) std::sort(edges.begin(), edges.end());

    const auto src = coeffs.index_of(source);
    const auto dst = coeffs.index_of(target);
    if (!src || !member[*src]) {
        throw validation_error("path_track: source " + source.str() + " is not in the accepted network");
    }
    if (!dst || !member[*dst]) {
        throw validation_error("path_track: target " + target.str() + " is not in the accepted network");
    }

    PathTrack result;
    if (*src == *dst) {
        result.found = true;
        return result;
    }

    // Dijkstra over (edge count, summed row error); neighbor expansion in id
    // order keeps the outcome deterministic.
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<int> hops(n, -1);
    std::vector<double> err(n, kInf);
    std::vector<int> prev(n, -1);
    using State = std::tuple<int, double, int>;  // hops, error, node
    std::priority_queue<State, std::vector<State>, std::greater<>> queue;
    hops[*src] = 0;
    err[*src] = 0.0;
    queue.push({0, 0.0, *src});
    while (!queue.empty()) {
        auto [h, e, v] = queue.top();
        queue.pop();
        if (h != hops[v] || e != err[v]) continue;
        if (v == *dst) break;
        for (int w : out[v]) {
            const double edge_err = coeffs.rows[w].row_error;
            const int nh = h + 1;
            const double ne = e + edge_err;
            if (hops[w] == -1 || nh < hops[w] || (nh == hops[w] && ne < err[w])) {
                hops[w] = nh;
                err[w] = ne;
                prev[w] = v;
                queue.push({nh, ne, w});
            }
        }
    }
    if (hops[*dst] == -1) return result;  // found = false

    result.found = true;
    result.error_bound = err[*dst];
    std::vector<int> chain;
    for (int v = *dst; v != -1; v = prev[v]) chain.push_back(v);
    std::reverse(chain.begin(), chain.end());
    for (int v : chain) result.path.push_back(coeffs.ids[v]);
    return result;
}

}  // namespace econet
