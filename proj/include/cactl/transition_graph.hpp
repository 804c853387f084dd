#pragma once

#include "cactl/digraph.hpp"
#include "cactl/rule.hpp"
#include "cactl/word.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cactl {

struct GraphLimits {
    int max_n = 16;                              // region-length cap (2^16 vertices)
    std::uint64_t max_entries = 1ull << 26;      // successor-table cap
};

/// The boundary-controlled transition graph G_n(F): one vertex per word in
/// A^n, and for every control pair an edge to the controlled successor. The
/// deduplicated adjacency is the Boolean transition matrix; its bi-infinite
/// walk space is the vertex-shift SFT.
struct TransitionGraph {
    int n = 0;
    int radius = 0;
    std::string rule_name;
    std::uint32_t vertex_count = 0;  // 2^n
    std::uint32_t control_count = 0; // 2^(2r)
    std::vector<std::uint32_t> successors; // vertex_count * control_count, row-major

    std::uint32_t successor(std::uint32_t v, std::uint32_t c) const {
        return successors[static_cast<std::size_t>(v) * control_count + c];
    }
    RegionWord word(std::uint32_t v) const { return RegionWord(n, v); }

    /// Per-vertex successor sets with duplicates collapsed, ascending.
    Digraph dedup_adjacency() const;
};

TransitionGraph build_graph(const Rule& rule, int n, const GraphLimits& limits = {});

SccResult scc(const TransitionGraph& graph);

struct RegionalControllability {
    bool controllable = false;
    std::uint32_t scc_count = 0;
    // On a negative verdict: a pair (from, to) with `to` unreachable from
    // `from` under any control sequence.
    std::optional<std::pair<RegionWord, RegionWord>> witness;
};

/// The one-SCC criterion over the whole vertex set; words that no control
/// can produce (in-degree 0) force a negative verdict.
RegionalControllability is_regionally_controllable(const TransitionGraph& graph);

/// gcd of all cycle lengths of G_n; requires strong connectivity.
std::uint64_t graph_period(const TransitionGraph& graph);

struct PrimitivityResult {
    bool strongly_connected = false;
    std::uint64_t period = 0; // meaningful only when strongly_connected
    bool primitive = false;   // strongly connected and period 1
    std::optional<std::uint64_t> index; // minimal M with C^M entrywise positive
    bool index_capped = false;
};

PrimitivityResult is_primitive(const TransitionGraph& graph);

inline constexpr std::uint64_t default_index_cap = 4096;

/// Minimal M <= cap with C^M entrywise positive (the uniform steering time).
/// Requires a primitive graph; absent with *capped = true when M > cap.
std::optional<std::uint64_t> primitivity_index(const TransitionGraph& graph,
                                               std::uint64_t cap = default_index_cap,
                                               bool* capped = nullptr);

struct ControlPlan {
    RegionWord initial;
    RegionWord target;
    std::vector<ControlPair> steps;

    int horizon() const { return static_cast<int>(steps.size()); }
};

/// Minimal-time plan steering s0 to sd, breadth-first over the labeled
/// graph; ties broken by smallest control index. Absent iff unreachable.
std::optional<ControlPlan> synthesize_control(const TransitionGraph& graph, const RegionWord& s0,
                                              const RegionWord& sd);

inline constexpr int default_horizon_cap = 4096;

/// A plan of exactly T steps, via layered reachability over (vertex, time);
/// absent iff no length-T path exists.
std::optional<ControlPlan> synthesize_control_exact_time(const TransitionGraph& graph,
                                                         const RegionWord& s0,
                                                         const RegionWord& sd, int T,
                                                         int horizon_cap = default_horizon_cap);

struct SweepOptions {
    GraphLimits limits;
    std::uint64_t index_cap = default_index_cap;
    bool compute_index = true;
};

struct SweepRow {
    int n = 0;
    std::uint64_t vertices = 0;
    std::uint32_t scc_count = 0;
    bool regionally_controllable = false;
    std::optional<std::uint64_t> period;
    bool primitive = false;
    std::optional<std::uint64_t> primitivity_index;
    bool index_capped = false;
};

/// Per-n verdicts for n in [n_min, n_max]. Finite-level evidence only: a
/// positive row at every n supports, and never proves, the every-n property.
struct SweepReport {
    std::string rule_name;
    int n_min = 0;
    int n_max = 0;
    std::vector<SweepRow> rows;
    bool controllable_at_every_n_in_range = false;
};

SweepReport sweep(const Rule& rule, int n_min, int n_max, const SweepOptions& options = {});

} // namespace cactl
