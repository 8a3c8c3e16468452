#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "econet/flow_network.hpp"

namespace econet {

/// State of the largest strongly-connected component at one edge threshold.
struct PercolationEntry {
    double threshold = 0.0;      // USD
    std::size_t scc_nodes = 0;
    std::size_t scc_edges = 0;
    double scc_density = 0.0;    // 0 when the SCC has < 2 nodes
};

/// Result of a threshold sweep. Thresholds are strictly increasing and
/// scc_nodes is non-increasing along the sweep.
struct PercolationProfile {
    std::vector<PercolationEntry> entries;
    double grid_min = 0.0;
    double grid_max = 0.0;
    std::string spacing;  // "log" | "explicit"
};

/// Log-spaced threshold grid covering [min_threshold, max_threshold] with
/// `points_per_decade` points per factor of ten (endpoints included).
std::vector<double> log_grid(double min_threshold, double max_threshold,
                             int points_per_decade = 50);

/// For each grid threshold: filter, extract the largest SCC, and record its
/// node count, edge count and edge density. The grid must be non-empty and
/// strictly increasing.
PercolationProfile percolation_sweep(const FlowNetwork& net, const std::vector<double>& grid,
                                     const std::string& spacing = "explicit");

/// Threshold at which the largest relative drop of scc_nodes between
/// consecutive grid points is first observed, i.e. the grid value just past
/// argmax_i (n_i - n_{i+1}) / n_i with n_i > 0; ties resolve to the smallest
/// such threshold. Requires >= 3 entries; a profile without any strict drop
/// has no percolation point (computation_error).
double detect_percolation_point(const PercolationProfile& profile);

}  // namespace econet
