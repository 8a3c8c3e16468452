#include "econet/flow_network.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <tuple>

namespace econet {

FlowNetwork::FlowNetwork(std::vector<std::string> nodes,
                         std::vector<std::tuple<int, int, double>> edges,
                         std::optional<int> year)
    : nodes_(std::move(nodes)), year_(year) {
    if (!std::is_sorted(nodes_.begin(), nodes_.end()) ||
        std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end()) {
        throw std::invalid_argument("FlowNetwork: node ids must be sorted and unique");
    }
    const int n = static_cast<int>(nodes_.size());
    out_.resize(n);
    in_.resize(n);
    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto [s, t, w] = edges[i];
        if (s < 0 || s >= n || t < 0 || t >= n) {
            throw std::invalid_argument("FlowNetwork: edge endpoint out of range");
        }
        if (s == t) throw std::invalid_argument("FlowNetwork: self-loop on '" + nodes_[s] + "'");
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw std::invalid_argument("FlowNetwork: edge weight must be finite and > 0");
        }
        if (i > 0 && std::get<0>(edges[i - 1]) == s && std::get<1>(edges[i - 1]) == t) {
            throw std::invalid_argument("FlowNetwork: duplicate edge " + nodes_[s] + " -> " +
                                        nodes_[t]);
        }
        out_[s].emplace_back(t, w);
        in_[t].emplace_back(s, w);
    }
    edge_count_ = edges.size();
}

std::optional<int> FlowNetwork::node_index(std::string_view id) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id);
    if (it == nodes_.end() || *it != id) return std::nullopt;
    return static_cast<int>(it - nodes_.begin());
}

double FlowNetwork::weight(int source, int target) const {
    const auto& row = out_[source];
    auto it = std::lower_bound(row.begin(), row.end(), target,
                               [](const auto& e, int t) { return e.first < t; });
    if (it == row.end() || it->first != target) return 0.0;
    return it->second;
}

double FlowNetwork::out_flow(int v) const {
    double s = 0.0;
    for (const auto& [t, w] : out_[v]) s += w;
    return s;
}

double FlowNetwork::in_flow(int v) const {
    double s = 0.0;
    for (const auto& [t, w] : in_[v]) s += w;
    return s;
}

BuildResult build_flow_network(const std::vector<EdgeRecord>& records, std::optional<int> year) {
    std::vector<std::string> nodes;
    nodes.reserve(records.size() * 2);
    for (const auto& r : records) {
        nodes.push_back(r.source);
        nodes.push_back(r.target);
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    auto index_of = [&](const std::string& id) {
        return static_cast<int>(std::lower_bound(nodes.begin(), nodes.end(), id) - nodes.begin());
    };

    std::size_t self_loops = 0;
    std::map<std::pair<int, int>, double> seen;
    std::vector<std::tuple<int, int, double>> edges;
    for (const auto& r : records) {
        if (r.weight < 0.0 || !std::isfinite(r.weight)) {
            throw validation_error("negative or non-finite weight on edge " + r.source + " -> " +
                                   r.target);
        }
        const int s = index_of(r.source);
        const int t = index_of(r.target);
        if (s == t) {
            ++self_loops;
            continue;
        }
        if (!seen.emplace(std::make_pair(s, t), r.weight).second) {
            throw validation_error("duplicate edge " + r.source + " -> " + r.target);
        }
        if (r.weight > 0.0) edges.emplace_back(s, t, r.weight);
    }
    return BuildResult{FlowNetwork(std::move(nodes), std::move(edges), year), self_loops};
}

FlowNetwork threshold_filter(const FlowNetwork& net, double e_th) {
    if (e_th < 0.0) throw std::invalid_argument("threshold_filter: e_th must be >= 0");
    std::vector<std::tuple<int, int, double>> kept;
    net.for_each_edge([&](int s, int t, double w) {
        if (w >= e_th) kept.emplace_back(s, t, w);
    });
    return FlowNetwork(net.nodes(), std::move(kept), net.year());
}

namespace {

/// Iterative Tarjan; returns the component id per node. Component ids are
/// assigned in reverse topological order of the condensation.
std::vector<int> strongly_connected_components(const FlowNetwork& net, int& component_count) {
    const int n = static_cast<int>(net.node_count());
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<char> on_stack(n, 0);
    std::vector<int> stack;
    int next_index = 0;
    component_count = 0;

    struct Frame {
        int v;
        std::size_t edge;
    };
    std::vector<Frame> frames;

    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        frames.push_back({root, 0});
        while (!frames.empty()) {
            auto& [v, ei] = frames.back();
            if (ei == 0) {
                index[v] = low[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            bool descended = false;
            const auto& edges = net.out_edges(v);
            while (ei < edges.size()) {
                const int w = edges[ei].first;
                ++ei;
                if (index[w] == -1) {
                    frames.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[v] = std::min(low[v], index[w]);
            }
            if (descended) continue;
            if (low[v] == index[v]) {
                while (true) {
                    const int w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = component_count;
                    if (w == v) break;
                }
                ++component_count;
            }
            const int child = v;
            frames.pop_back();
            if (!frames.empty()) {
                low[frames.back().v] = std::min(low[frames.back().v], low[child]);
            }
        }
    }
    return comp;
}

}  // namespace

FlowNetwork largest_scc(const FlowNetwork& net) {
    if (net.node_count() == 0) return FlowNetwork{};
    int ncomp = 0;
    const std::vector<int> comp = strongly_connected_components(net, ncomp);

    std::vector<std::vector<int>> members(ncomp);
    for (int v = 0; v < static_cast<int>(net.node_count()); ++v) {
        members[comp[v]].push_back(v);
    }
    // Members are ascending by node index, hence by node id; the
    // lexicographically-smallest-id-set tie rule reduces to comparing the
    // sorted index vectors.
    int best = 0;
    for (int c = 1; c < ncomp; ++c) {
        if (members[c].size() > members[best].size() ||
            (members[c].size() == members[best].size() && members[c] < members[best])) {
            best = c;
        }
    }
    const auto& keep = members[best];
    std::vector<std::string> nodes;
    nodes.reserve(keep.size());
    std::vector<int> remap(net.node_count(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        remap[keep[i]] = static_cast<int>(i);
        nodes.push_back(net.node_id(keep[i]));
    }
    std::vector<std::tuple<int, int, double>> edges;
    net.for_each_edge([&](int s, int t, double w) {
        if (remap[s] != -1 && remap[t] != -1) edges.emplace_back(remap[s], remap[t], w);
    });
    return FlowNetwork(std::move(nodes), std::move(edges), net.year());
}

double edge_density(const FlowNetwork& net) {
    const double n = static_cast<double>(net.node_count());
    if (n < 2) {
        throw computation_error("edge density undefined for networks with fewer than 2 nodes");
    }
    return static_cast<double>(net.edge_count()) / (n * n - n);
}

}  // namespace econet
