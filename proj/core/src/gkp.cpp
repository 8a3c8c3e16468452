#include "econet/gkp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>

#include "econet/stats.hpp"

namespace econet {

namespace {

Eigen::MatrixXd flow_matrix(const FlowNetwork& net) {
    const int n = static_cast<int>(net.node_count());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    net.for_each_edge([&](int s, int t, double w) { A(s, t) = w; });
    return A;
}

double gkp_from_matrix(const Eigen::MatrixXd& A, const Eigen::MatrixXd& support, int i) {
    const double inflow = A.col(i).sum();
    const double outflow = A.row(i).sum();
    if (inflow <= 0.0 || outflow <= 0.0) return 0.0;
    // [Abar^T A Abar^T]_ii: upstream indicator column against downstream row.
    const double bypass = support.col(i).transpose() * A * support.row(i).transpose();
    const double gate = std::sqrt(inflow * outflow);
    return gate / (gate + bypass);
}

}  // namespace

double gkp(const FlowNetwork& net, std::string_view node) {
    const auto idx = net.node_index(node);
    if (!idx) throw validation_error("gkp: unknown node '" + std::string(node) + "'");
    const Eigen::MatrixXd A = flow_matrix(net);
    const Eigen::MatrixXd support = (A.array() > 0.0).cast<double>();
    return gkp_from_matrix(A, support, *idx);
}

std::vector<double> gkp_all(const FlowNetwork& net) {
    const int n = static_cast<int>(net.node_count());
    const Eigen::MatrixXd A = flow_matrix(net);
    const Eigen::MatrixXd support = (A.array() > 0.0).cast<double>();
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = gkp_from_matrix(A, support, i);
    return out;
}

GkpSeries gkp_series(const std::vector<FlowNetwork>& yearly_networks,
                     const std::vector<std::string>& nodes) {
    if (yearly_networks.empty()) throw validation_error("gkp series: no networks");
    std::vector<const FlowNetwork*> ordered;
    std::set<int> years;
    for (const auto& net : yearly_networks) {
        if (!net.year()) throw validation_error("gkp series: network without a year label");
        if (!years.insert(*net.year()).second) {
            throw validation_error("gkp series: duplicate year " + std::to_string(*net.year()));
        }
        ordered.push_back(&net);
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const FlowNetwork* a, const FlowNetwork* b) { return *a->year() < *b->year(); });

    GkpSeries series;
    series.nodes = nodes;
    series.g.assign(nodes.size(), {});
    for (const FlowNetwork* net : ordered) {
        series.years.push_back(*net->year());
        const std::vector<double> all = gkp_all(*net);
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            const auto idx = net->node_index(nodes[k]);
            if (!idx) {
                throw validation_error("gkp series: node '" + nodes[k] + "' absent in year " +
                                       std::to_string(*net->year()));
            }
            series.g[k].push_back(all[*idx]);
        }
    }
    return series;
}

CorrelationRow correlate_gdp(const std::string& country, std::span<const double> gkp_values,
                             std::span<const double> imports, std::span<const double> exports,
                             std::span<const double> gdp_change) {
    const std::size_t n = gdp_change.size();
    if (gkp_values.size() != n || imports.size() != n || exports.size() != n) {
        throw std::invalid_argument("correlate_gdp: series lengths differ");
    }
    if (n < 3) throw std::invalid_argument("correlate_gdp: need at least 3 aligned years");
    CorrelationRow row;
    row.country = country;
    row.corr_gkp = pearson_or_nan(gkp_values, gdp_change);
    row.corr_imports = pearson_or_nan(imports, gdp_change);
    row.corr_exports = pearson_or_nan(exports, gdp_change);
    return row;
}

}  // namespace econet
