#include "econet/percolation.hpp"

#include <algorithm>
#include <cmath>

namespace econet {

std::vector<double> log_grid(double min_threshold, double max_threshold, int points_per_decade) {
    if (!(min_threshold > 0.0) || !(max_threshold > min_threshold)) {
        throw std::invalid_argument("log_grid: need 0 < min < max");
    }
    if (points_per_decade < 1) throw std::invalid_argument("log_grid: points_per_decade < 1");
    const double lo = std::log10(min_threshold);
    const double hi = std::log10(max_threshold);
    const int steps = static_cast<int>(std::ceil((hi - lo) * points_per_decade));
    std::vector<double> grid;
    grid.reserve(steps + 1);
    for (int i = 0; i <= steps; ++i) {
        const double x = lo + (hi - lo) * i / steps;
        grid.push_back(std::pow(10.0, x));
    }
    grid.front() = min_threshold;
    grid.back() = max_threshold;
    return grid;
}

PercolationProfile percolation_sweep(const FlowNetwork& net, const std::vector<double>& grid,
                                     const std::string& spacing) {
    if (grid.empty()) throw std::invalid_argument("percolation_sweep: empty grid");
    if (!std::is_sorted(grid.begin(), grid.end()) ||
        std::adjacent_find(grid.begin(), grid.end()) != grid.end()) {
        throw std::invalid_argument("percolation_sweep: grid must be strictly increasing");
    }
    PercolationProfile profile;
    profile.grid_min = grid.front();
    profile.grid_max = grid.back();
    profile.spacing = spacing;
    profile.entries.reserve(grid.size());
    for (double th : grid) {
        const FlowNetwork scc = largest_scc(threshold_filter(net, th));
        PercolationEntry e;
        e.threshold = th;
        e.scc_nodes = scc.node_count();
        e.scc_edges = scc.edge_count();
        e.scc_density = scc.node_count() >= 2 ? edge_density(scc) : 0.0;
        profile.entries.push_back(e);
    }
    return profile;
}

double detect_percolation_point(const PercolationProfile& profile) {
    const auto& es = profile.entries;
    if (es.size() < 3) {
        throw std::invalid_argument("detect_percolation_point: need at least 3 profile entries");
    }
    double best_drop = 0.0;
    int best = -1;
    for (std::size_t i = 0; i + 1 < es.size(); ++i) {
        const double n0 = static_cast<double>(es[i].scc_nodes);
        const double n1 = static_cast<double>(es[i + 1].scc_nodes);
        if (n0 <= 0.0 || n1 >= n0) continue;
        const double drop = (n0 - n1) / n0;
        if (drop > best_drop) {
            best_drop = drop;
            best = static_cast<int>(i);
        }
    }
    if (best < 0) throw computation_error("no percolation point: profile has no drop");
    return es[best + 1].threshold;
}

}  // namespace econet
