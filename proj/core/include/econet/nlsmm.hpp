#pragma once

#include <optional>
#include <string>
#include <vector>

#include "econet/common.hpp"
#include "econet/flow_network.hpp"

namespace econet {

struct DensityPoint {
    YearMonth time;
    double rho = 0.0;  // edge density, in (0, 1]
};

/// Edge-density series of the thresholded largest SCC over time.
struct DensitySeries {
    std::vector<DensityPoint> points;  // strictly increasing times
    double threshold_used = 0.0;       // USD
    YearMonth reference;               // t_r of the stored normalization

    void validate() const;
    /// rho(t) / rho(reference); the reference time must be present.
    std::vector<double> normalized() const;
};

enum class SeriesKind { noa, gmv };
std::string to_string(SeriesKind k);
SeriesKind series_kind_from_string(const std::string& s);

struct SeriesPoint {
    YearMonth time;
    double value = 0.0;  // USD
};

/// Market-value time series of one derivative product class.
struct DerivativeSeries {
    std::vector<SeriesPoint> points;  // strictly increasing times, values >= 0
    SeriesKind kind = SeriesKind::noa;
    std::string label;

    void validate() const;
};

/// Per-year density of the largest SCC at the working threshold e_th.
/// Yearly networks must carry distinct year labels; a year whose filtered
/// SCC falls below 2 nodes is an error naming that year. Points are stamped
/// at end of year (YYYY-12).
DensitySeries build_density_series(const std::vector<FlowNetwork>& yearly_networks, double e_th,
                                   int reference_year);

/// Resample to 6-month spacing by linear interpolation of rho; endpoints are
/// not extrapolated. Needs at least 2 points.
DensitySeries resample_density(const DensitySeries& series);

/// V(t_n) = V_r * a_r * [ rho_bar(t_n)^gamma1 + rho_bar(t_{n-1})^gamma2 ],
/// evaluated from the second input point onward. rho_bar must be > 0.
std::vector<SeriesPoint> nlsmm_eval(const std::vector<DensityPoint>& rho_bar, double a_r,
                                    double gamma1, double gamma2, double v_r);

enum class FitVerdict { accept, maybe, reject };
std::string to_string(FitVerdict v);

/// accept iff p_r >= 0.9; maybe iff 0.85 <= p_r < 0.9; reject otherwise
/// (an undefined p_r rejects).
FitVerdict verdict_for(double p_r);

struct NlsmmFit {
    double a_r = 0.0;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    int delta_t_months = 0;       // > 0: density leads the derivative series
    double p_r = 0.0;             // Pearson between best-fit model and data
    double memory_ratio = 0.0;    // gamma2 / gamma1, NaN when gamma1 <= 0
    FitVerdict verdict = FitVerdict::reject;
    double relative_sse = 0.0;    // minimized sum of squared relative errors
    int points_used = 0;
};

struct NlsmmOptions {
    std::vector<int> dt_grid_months = {-12, -6, 0, 6, 12};  // multiples of 6
    double a_min = 0.1, a_max = 3.0, a_step = 0.1;
    double gamma_min = -15.0, gamma_max = 20.0, gamma_step = 0.1;
    int min_overlap = 4;
};

/// Least-squares fit of the short-term memory model to one derivative
/// series: per candidate lead/lag the density series is shifted, normalized
/// at the first common time, and (a_r, gamma1, gamma2) minimized over the
/// coarse grid plus a local refinement; the lead/lag with the best Pearson
/// goodness wins. The density series may be annual (it is resampled) or
/// already semiannual.
NlsmmFit nlsmm_fit(const DensitySeries& density, const DerivativeSeries& target,
                   const NlsmmOptions& options = {});

/// Model values of a completed fit on the common grid of density and target
/// at the fit's lead/lag; keeps the target's kind and label.
DerivativeSeries nlsmm_model_series(const DensitySeries& density, const DerivativeSeries& target,
                                    const NlsmmFit& fit);

/// Dynamic warning threshold w_th(t) = f_max * V_RV(t).
struct WarningConfig {
    std::vector<SeriesPoint> reference;  // macro reference variable, values > 0
    double f_max = 0.0;
};

struct WarningResult {
    std::vector<YearMonth> warnings;  // times with V_D(t) > f_max * V_RV(t)
    std::optional<YearMonth> first;
    int compared_points = 0;
};

/// Evaluate the threshold rule on the common time grid of model and
/// reference series; disjoint grids are an error.
WarningResult warning_signal(const DerivativeSeries& model, const WarningConfig& config);

}  // namespace econet
