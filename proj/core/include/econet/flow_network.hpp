#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "econet/common.hpp"

namespace econet {

/// One directed monetary flow record, as read from an edge-list file.
struct EdgeRecord {
    std::string source;
    std::string target;
    double weight = 0.0;  // USD
};

/// Weighted directed graph of monetary flows/positions between countries.
///
/// Invariants: node ids sorted and unique; no self-loops; every edge weight
/// strictly positive (zero-weight means absent); endpoints within the node
/// set. Immutable after construction; all operations below are pure.
class FlowNetwork {
public:
    FlowNetwork() = default;

    /// `nodes` must be sorted and unique; `edges` carry node indices.
    /// Throws std::invalid_argument when the stated invariants do not hold.
    FlowNetwork(std::vector<std::string> nodes,
                std::vector<std::tuple<int, int, double>> edges,
                std::optional<int> year = std::nullopt);

    const std::vector<std::string>& nodes() const { return nodes_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    std::optional<int> year() const { return year_; }

    std::optional<int> node_index(std::string_view id) const;
    const std::string& node_id(int v) const { return nodes_[v]; }

    /// 0.0 when the edge is absent.
    double weight(int source, int target) const;

    /// Outgoing (target, weight) pairs in ascending target order.
    const std::vector<std::pair<int, double>>& out_edges(int v) const { return out_[v]; }
    /// Incoming (source, weight) pairs in ascending source order.
    const std::vector<std::pair<int, double>>& in_edges(int v) const { return in_[v]; }

    double out_flow(int v) const;
    double in_flow(int v) const;

    /// Visit every edge as (source, target, weight), ascending (source, target).
    template <typename F>
    void for_each_edge(F&& f) const {
        for (int v = 0; v < static_cast<int>(out_.size()); ++v) {
            for (const auto& [t, w] : out_[v]) f(v, t, w);
        }
    }

private:
    std::vector<std::string> nodes_;
    std::vector<std::vector<std::pair<int, double>>> out_;
    std::vector<std::vector<std::pair<int, double>>> in_;
    std::size_t edge_count_ = 0;
    std::optional<int> year_;
};

struct BuildResult {
    FlowNetwork network;
    std::size_t self_loops_dropped = 0;
};

/// Build a network from raw records. Self-loops are dropped (counted in the
/// result); duplicate (source,target) pairs and negative weights are
/// rejected with a validation_error naming the offending pair. Zero-weight
/// records mean "no edge" and are skipped.
BuildResult build_flow_network(const std::vector<EdgeRecord>& records,
                               std::optional<int> year = std::nullopt);

/// Keep exactly the edges with weight >= e_th; the node set is unchanged.
FlowNetwork threshold_filter(const FlowNetwork& net, double e_th);

/// Induced subgraph on the largest set of mutually reachable nodes.
/// Ties on component size break toward the lexicographically smallest
/// node-id set. Empty input yields an empty network.
FlowNetwork largest_scc(const FlowNetwork& net);

/// M / (N^2 - N). Requires N >= 2 (throws computation_error otherwise).
double edge_density(const FlowNetwork& net);

}  // namespace econet
