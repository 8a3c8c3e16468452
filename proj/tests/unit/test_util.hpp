#pragma once

// Shared helpers for the unit tests: quick network construction and the
// brute-force reachability oracle the SCC tests compare against.

#include <random>
#include <string>
#include <vector>

#include "econet/flow_network.hpp"

namespace econet::test {

inline FlowNetwork net_of(const std::vector<EdgeRecord>& records) {
    return build_flow_network(records).network;
}

/// Random digraph on n nodes ("N00", "N01", ...) with edge probability p and
/// weights uniform in (0, 1].
inline FlowNetwork random_digraph(int n, double p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<EdgeRecord> records;
    auto name = [](int i) {
        char buf[8];
        std::snprintf(buf, sizeof(buf), "N%02d", i);
        return std::string(buf);
    };
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            if (unit(rng) < p) records.push_back({name(a), name(b), unit(rng) + 1e-9});
        }
    }
    std::vector<std::string> isolated;
    for (int i = 0; i < n; ++i) {
        // keep every node in the network even when isolated
        records.push_back({name(i), name((i + 1) % n), 0.0});
    }
    return net_of(records);
}

/// All-pairs reachability via transitive closure (Floyd-Warshall style);
/// the independent oracle for strongly-connected-component checks.
inline std::vector<std::vector<bool>> transitive_closure(const FlowNetwork& net) {
    const int n = static_cast<int>(net.node_count());
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (int v = 0; v < n; ++v) {
        reach[v][v] = true;
        for (const auto& [t, w] : net.out_edges(v)) reach[v][t] = true;
    }
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            if (!reach[i][k]) continue;
            for (int j = 0; j < n; ++j) {
                if (reach[k][j]) reach[i][j] = true;
            }
        }
    }
    return reach;
}

/// Largest mutual-reachability class, smallest node set on ties; returns
/// node ids.
inline std::vector<std::string> scc_oracle(const FlowNetwork& net) {
    const auto reach = transitive_closure(net);
    const int n = static_cast<int>(net.node_count());
    std::vector<bool> used(n, false);
    std::vector<std::vector<int>> classes;
    for (int v = 0; v < n; ++v) {
        if (used[v]) continue;
        std::vector<int> cls;
        for (int w = 0; w < n; ++w) {
            if (reach[v][w] && reach[w][v]) {
                cls.push_back(w);
                used[w] = true;
            }
        }
        classes.push_back(cls);
    }
    std::vector<int> best;
    for (const auto& cls : classes) {
        if (cls.size() > best.size() || (cls.size() == best.size() && cls < best)) best = cls;
    }
    std::vector<std::string> ids;
    for (int v : best) ids.push_back(net.node_id(v));
    return ids;
}

}  // namespace econet::test
