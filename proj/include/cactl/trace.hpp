#pragma once

#include "cactl/digraph.hpp"
#include "cactl/rule.hpp"
#include "cactl/transition_graph.hpp"
#include "cactl/word.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cactl {

/// A height-k block of the width-n trace: the k successive region windows,
/// each stored by its word encoding, top row first.
using TraceBlock = std::vector<std::uint64_t>;

inline constexpr int default_seed_width_cap = 26;

/// The exact block language L_k of the width-n trace, computed by
/// enumerating every seed of width n + 2r(k-1): determinism makes the
/// dependence cone of k rows finite, so the enumeration is exhaustive.
/// Each block keeps its smallest witness seed.
struct TraceBlockLanguage {
    std::string rule_name;
    int n = 0;
    int k = 0;
    int radius = 0;
    int seed_width = 0;
    std::map<TraceBlock, std::uint64_t> blocks; // block -> smallest witness seed

    std::size_t size() const { return blocks.size(); }
};

TraceBlockLanguage trace_blocks(const Rule& rule, int n, int k,
                                int seed_width_cap = default_seed_width_cap);

/// The k-approximation SFT presented as a digraph on (k-1)-blocks: u -> v
/// when the two overlap in k-2 rows and their union is an allowed k-block.
/// Bi-infinite walks generate exactly the sequences all of whose k-windows
/// are allowed. For k = 1 the presentation degenerates to the complete
/// digraph on the occurring letters.
struct ApproximationSft {
    std::string rule_name;
    int n = 0;
    int k = 0;
    std::vector<TraceBlock> vertices; // (k-1)-blocks, ascending
    Digraph graph;
};

ApproximationSft k_approximation(const TraceBlockLanguage& lang);

struct SftTransitivity {
    bool strict = false;          // whole derived graph strongly connected
    bool essential = false;       // essential subgraph strongly connected
    bool essential_empty = false; // no bi-infinite walk at all
};

/// Transitivity in both the strict whole-graph sense and the conventional
/// essential-graph sense; the two differ exactly when pruning removes
/// vertices (rule 0 is the stock witness).
SftTransitivity sft_is_transitive(const ApproximationSft& sft);

struct SftMixing {
    bool mixing = false;
    bool essential_empty = false;
    bool essential_strongly_connected = false;
    std::uint64_t period = 0; // of the essential graph, when strongly connected
};

/// Mixing = essential graph strongly connected with period 1.
SftMixing sft_is_mixing(const ApproximationSft& sft);

/// Structural identity between the 2-approximation of the trace and the
/// boundary-controlled transition graph: a height-2 block exists iff some
/// boundary context produces that transition, so the edge sets must agree.
bool approximation_equals_graph(const Rule& rule, int n,
                                int seed_width_cap = default_seed_width_cap,
                                const GraphLimits& limits = {});

/// Least T <= t_max such that some free (uncontrolled) configuration shows
/// window w at time 0 and window u at time T; absent if none within the
/// bound. A bounded surrogate for trace transitivity without control.
std::optional<int> trace_reach(const Rule& rule, int n, const RegionWord& w, const RegionWord& u,
                               int t_max, int seed_width_cap = default_seed_width_cap);

} // namespace cactl
