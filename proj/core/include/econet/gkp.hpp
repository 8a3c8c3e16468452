#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "econet/flow_network.hpp"

namespace econet {

/// Gate-keeping potential of one node: the fraction of its
/// nearest-neighbour flow that passes through the node itself,
///   g = sqrt(in * out) / (sqrt(in * out) + bypass),
/// with bypass = [Abar^T A Abar^T]_ii, the total flow running directly from
/// the node's upstream to its downstream neighbours. Nodes without in- or
/// out-flow gate nothing and score 0.
double gkp(const FlowNetwork& net, std::string_view node);

/// g for every node, in node order.
std::vector<double> gkp_all(const FlowNetwork& net);

/// Per-node GKP over a sequence of yearly networks.
struct GkpSeries {
    std::vector<std::string> nodes;
    std::vector<int> years;                 // ascending
    std::vector<std::vector<double>> g;     // [node][year index]
};

/// Every requested node must be present in every year's network (the error
/// names the first missing year/node pair). Networks must carry distinct
/// year labels.
GkpSeries gkp_series(const std::vector<FlowNetwork>& yearly_networks,
                     const std::vector<std::string>& nodes);

/// Pearson correlations of a country's annual GDP change against its GKP,
/// import and export series. Constant inputs yield NaN sentinels.
struct CorrelationRow {
    std::string country;
    double corr_gkp = 0.0;
    double corr_imports = 0.0;
    double corr_exports = 0.0;
};

/// All four series must be aligned on the same year range (equal lengths,
/// >= 3 points).
CorrelationRow correlate_gdp(const std::string& country, std::span<const double> gkp_values,
                             std::span<const double> imports, std::span<const double> exports,
                             std::span<const double> gdp_change);

}  // namespace econet
