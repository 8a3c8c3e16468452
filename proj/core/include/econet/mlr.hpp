#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "econet/panel.hpp"

namespace econet {

/// Statistical acceptance bounds for one regression row.
struct FitCriteria {
    double alpha = 0.025;          // t- and F-test significance level
    double max_mean_error = 0.10;  // time-averaged relative fit error cap
    double max_condition = 10.0;   // on the normalized design matrix
    double max_vif = 5.0;

    void validate() const;
};

enum class RowStatus { accepted, rejected, unfittable };

std::string to_string(RowStatus s);
RowStatus row_status_from_string(const std::string& s);

/// One retained regressor of a fitted row.
struct RegressorTerm {
    int regressor = -1;     // indicator index in the panel/network id order
    double beta = 0.0;
    double edge_r2 = 0.0;   // R^2 of the simple regression regressand ~ regressor
    double t_pvalue = 0.0;
};

/// Step-1 simple-regression diagnostics of one candidate, kept so that the
/// seeding order remains auditable.
struct CandidateDiag {
    int candidate = -1;
    double slr_ssr = 0.0;  // sum of squared residuals ("residuum")
    double slr_r2 = 0.0;
    double slr_pvalue = 0.0;
};

/// Result of the iterative stepwise fit for one regressand.
struct RowFit {
    int regressand = -1;
    RowStatus status = RowStatus::unfittable;
    std::string note;  // why a row is unfittable/rejected
    double intercept = 0.0;
    std::vector<RegressorTerm> terms;  // ascending regressor index
    /// Mean relative fit error / F p-value of the final model; NaN when the
    /// row never reached a fitted model.
    double row_error = std::numeric_limits<double>::quiet_NaN();
    double f_pvalue = std::numeric_limits<double>::quiet_NaN();
    int sample_count = 0;
    std::vector<CandidateDiag> step1;  // ascending (residuum, candidate id)
};

struct GbopnSummary {
    int indicators = 0;
    int accepted = 0;
    int rejected = 0;
    int unfittable = 0;
    double mean_error = 0.0;    // over accepted rows, NaN when none
    double median_error = 0.0;  // over accepted rows, NaN when none
};

/// The fitted balance-of-payments network: one row of the coefficient
/// matrix per indicator, plus the acceptance summary. Only accepted rows
/// carry coefficients.
struct CoefficientNetwork {
    std::vector<IndicatorId> ids;  // aligned with RowFit::regressand / term indices
    std::vector<RowFit> rows;      // one per id, same order
    GbopnSummary summary;

    const RowFit* row(const IndicatorId& id) const;
    std::optional<int> index_of(const IndicatorId& id) const;
};

/// The iterative per-regressand fit:
///  1. simple regression of I_i(t+1) on every other complete I_j(t);
///  2. seed with the candidate of smallest residuum (ties by id); the seed
///     regression must be t-significant, otherwise the row is rejected with
///     empty support;
///  3-5. try each remaining candidate once, in ascending step-1 residuum
///     order; keep an addition only if it strictly reduces the mean relative
///     error and the enlarged model passes the t-, VIF- and condition-number
///     bounds;
///  6. accept the final model iff its F p-value and mean relative error are
///     within bounds.
/// With `holdout_last_year` the last panel year is excluded from fitting.
RowFit stepwise_fit(const IndicatorPanel& panel, int regressand, const FitCriteria& criteria,
                    bool holdout_last_year = false);

/// stepwise_fit applied to every indicator; indicators with missing years in
/// the fit window are reported unfittable and excluded from regressor roles.
CoefficientNetwork fit_gbopn(const IndicatorPanel& panel, const FitCriteria& criteria,
                             bool holdout_last_year = false);

struct ForecastRow {
    IndicatorId id;
    double predicted = 0.0;
    std::optional<double> actual;
    std::optional<double> rel_error;  // |predicted - actual| / |actual|
};

struct ForecastReport {
    int from_year = 0;
    std::vector<ForecastRow> rows;                            // accepted rows only
    std::vector<std::pair<IndicatorId, std::string>> skipped;  // row, reason
};

/// Apply the coefficient matrix as an evolution operator: predict every
/// accepted indicator at from_year + 1 from the panel values at from_year.
ForecastReport forecast(const CoefficientNetwork& coeffs, const IndicatorPanel& panel,
                        int from_year);

/// Tracking centrality: T_i sums sqrt(R2) * S_regressand over the edges
/// leaving indicator i (the rows i helps describe).
struct TrackingScore {
    struct EdgeValue {
        int regressor = -1;
        int regressand = -1;
        double value = 0.0;  // sqrt(R2_ij) * S_j
    };
    std::vector<double> sizes;        // S_i, aligned with network ids
    std::vector<double> centrality;   // T_i
    std::vector<EdgeValue> edges;     // ascending (regressor, regressand)
};

TrackingScore tracking_centrality(const CoefficientNetwork& coeffs,
                                  std::span<const double> sizes);

struct PathTrack {
    bool found = false;
    std::vector<IndicatorId> path;  // source..target inclusive; empty when source == target
    double error_bound = 0.0;       // sum of row errors along the path
};

/// Shortest regressor->regressand path in the accepted network (fewest
/// edges, ties by smallest summed row error). Both endpoints must be nodes
/// of the accepted network.
PathTrack path_track(const CoefficientNetwork& coeffs, const IndicatorId& source,
                     const IndicatorId& target);

}  // namespace econet
