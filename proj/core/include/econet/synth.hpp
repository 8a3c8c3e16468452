#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "econet/flow_network.hpp"
#include "econet/nlsmm.hpp"
#include "econet/panel.hpp"

namespace econet {

// Deterministic synthetic data with planted ground truth, for desk-scale
// verification of the fitting, percolation and centrality pipelines. The
// same seed always yields the same data.

/// Panel with planted one-regressor relations I_a(t+1) = beta * I_b(t) + c
/// plus optional pure-noise regressands that a correct fit must reject.
struct PanelSynthSpec {
    int indicators = 40;
    int years = 10;  // panel years; usable samples = years - 1
    int relations = 30;
    int noise_regressands = 0;
    double noise = 0.001;  // relative noise on planted regressands
    int first_year = 2003;

    void validate() const;
};

struct PlantedRelation {
    IndicatorId regressand;
    IndicatorId regressor;
    double beta = 0.0;
    double intercept = 0.0;
};

struct PanelSynthResult {
    std::vector<PanelRecord> records;
    std::vector<PlantedRelation> relations;
    std::vector<IndicatorId> noise_ids;
};

PanelSynthResult synth_panel(const PanelSynthSpec& spec, std::uint64_t seed);

/// Two-scale holdings networks: a strongly connected core carrying weights
/// in [core_min, core_max] whose internal edge count grows over the years,
/// and periphery nodes attached to the core at exactly periphery_weight.
/// With periphery > core*(core-1) the loss of the periphery is guaranteed to
/// be the largest relative drop of any threshold sweep crossing
/// periphery_weight, so the detected percolation point always falls in
/// (periphery_weight, core_min].
struct PinSynthSpec {
    int core = 5;
    int periphery = 30;
    int years = 11;
    int first_year = 2002;
    double periphery_weight = 10.0;
    double core_min = 100.0;
    double core_max = 900.0;
    double scale = 1.0;  // multiply every weight (e.g. 1e6 for USD units)

    void validate() const;
};

struct PinSynthResult {
    std::vector<FlowNetwork> networks;  // one per year
    double periphery_weight = 0.0;      // after scaling
    double core_min = 0.0;              // after scaling
    std::vector<double> core_density;   // planted per-year density at the working point
};

PinSynthResult synth_pin(const PinSynthSpec& spec, std::uint64_t seed);

/// Derivative series produced by the short-term memory model from a density
/// series, mirroring the fitter's conventions (semiannual resampling, shift
/// by delta_t, normalization at the first model point). a_r_effective is the
/// scaling factor a correct fit recovers, absorbing the reference choice.
struct NlsmmTargetSpec {
    double a_r = 0.9;
    double gamma1 = 11.0;
    double gamma2 = 6.6;
    int delta_t_months = 6;
    double v_r = 1e12;
    SeriesKind kind = SeriesKind::noa;
    std::string label = "CDS-total";
};

struct NlsmmTargetResult {
    DerivativeSeries target;
    double a_r_effective = 0.0;
};

NlsmmTargetResult synth_nlsmm_target(const DensitySeries& density, const NlsmmTargetSpec& spec);

/// Yearly trade networks where one designated bypass edge around the focal
/// node grows every year (so the focal GKP strictly decreases) and the focal
/// country's GDP changes are an affine function of its GKP.
struct TradeSynthSpec {
    int countries = 8;
    int years = 12;
    int first_year = 2000;

    void validate() const;
};

struct TradeSynthResult {
    std::vector<FlowNetwork> networks;  // one per year
    std::map<std::string, std::map<int, double>> gdp;
    std::string focal;
};

TradeSynthResult synth_trade(const TradeSynthSpec& spec, std::uint64_t seed);

}  // namespace econet
