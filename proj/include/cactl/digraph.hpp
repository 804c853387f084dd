#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace cactl {

/// Plain adjacency-list digraph shared by the transition-graph and
/// trace-subshift analyses.
struct Digraph {
    std::vector<std::vector<std::uint32_t>> adj;

    std::uint32_t size() const { return static_cast<std::uint32_t>(adj.size()); }
    std::uint64_t edge_count() const {
        std::uint64_t total = 0;
        for (const auto& row : adj) total += row.size();
        return total;
    }
};

struct SccResult {
    std::vector<std::uint32_t> component; // per vertex, numbered in Tarjan pop order
    std::uint32_t count = 0;
    std::vector<std::uint32_t> sizes;
    // Deduplicated cross edges; pop-order numbering makes every edge go from
    // a higher component id to a lower one, so the condensation is acyclic.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> condensation_edges;

    bool strongly_connected() const { return count == 1; }
};

/// Tarjan with an explicit frame stack; graphs with 2^16 vertices cannot
/// overflow call depth.
SccResult strongly_connected_components(const Digraph& g);

/// gcd of all cycle lengths, computed as the gcd over all edges (u, v) of
/// depth(u) + 1 - depth(v) in a breadth-first layering from vertex 0.
/// Requires a strongly connected graph (throws precondition_error otherwise).
/// Returns 0 for the degenerate single-vertex graph with no self-loop.
std::uint64_t digraph_period(const Digraph& g);

/// Maximal subgraph in which every vertex has in-degree and out-degree >= 1,
/// i.e. the vertices lying on bi-infinite walks. `kept` receives the original
/// vertex ids in ascending order.
Digraph essential_subgraph(const Digraph& g, std::vector<std::uint32_t>* kept = nullptr);

/// Least M <= cap such that the Boolean adjacency power C^M is entrywise
/// positive, by sequential bitset-row products. Requires a strongly connected
/// aperiodic graph; returns nullopt with *capped = true when M would exceed
/// the cap.
std::optional<std::uint64_t> boolean_power_positivity_index(const Digraph& g, std::uint64_t cap,
                                                            bool* capped = nullptr);

} // namespace cactl
