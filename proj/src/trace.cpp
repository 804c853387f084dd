#include "cactl/trace.hpp"

#include "cactl/parallel.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace cactl {

namespace {

// One free step on a row of `width` cells packed into a uint64, shrinking by
// r per side.
std::uint64_t step_row(const Rule& rule, std::uint64_t row, int width) {
    const int d = rule.diameter();
    const int out_len = width - 2 * rule.radius();
    const std::uint64_t mask = (1ull << d) - 1;
    std::uint64_t out = 0;
    for (int i = 0; i < out_len; ++i)
        out = (out << 1) | rule.apply(static_cast<std::uint32_t>((row >> (out_len - 1 - i)) & mask));
    return out;
}

// The k region windows produced by a seed covering the dependence cone,
// written into `block` (sized k) to keep the enumeration allocation-free.
void block_of_seed(const Rule& rule, std::uint64_t seed, int seed_width, int n, int k,
                   TraceBlock& block) {
    const int r = rule.radius();
    std::uint64_t row = seed;
    int width = seed_width;
    for (int t = 0; t < k; ++t) {
        // The region sits r*(k-1-t) cells from the left end of the row.
        const int offset = r * (k - 1 - t);
        block[static_cast<std::size_t>(t)] = (row >> (width - offset - n)) & ((1ull << n) - 1);
        if (t + 1 < k) {
            row = step_row(rule, row, width);
            width -= 2 * r;
        }
    }
}

} // namespace

TraceBlockLanguage trace_blocks(const Rule& rule, int n, int k, int seed_width_cap) {
    if (n < 1 || k < 1) throw input_error("need n >= 1 and k >= 1");
    const int r = rule.radius();
    const int seed_width = n + 2 * r * (k - 1);
    if (seed_width > seed_width_cap)
        throw resource_error("trace blocks need seeds of width " + std::to_string(seed_width) +
                             ", cap is " + std::to_string(seed_width_cap));

    TraceBlockLanguage lang;
    lang.rule_name = rule.name();
    lang.n = n;
    lang.k = k;
    lang.radius = r;
    lang.seed_width = seed_width;

    const std::uint64_t seed_count = 1ull << seed_width;
    const unsigned workers = thread_hint();
    std::vector<std::map<TraceBlock, std::uint64_t>> partial(std::max(1u, workers));
    parallel_ranges(seed_count, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
        auto& mine = partial[w];
        TraceBlock scratch(static_cast<std::size_t>(k));
        for (std::uint64_t seed = begin; seed < end; ++seed) {
            block_of_seed(rule, seed, seed_width, n, k, scratch);
            // ascending seeds: the first insert per block is the smallest
            if (mine.find(scratch) == mine.end()) mine.emplace(scratch, seed);
        }
    });
    // Keep the smallest witness seed per block; merge order does not matter.
    for (auto& part : partial)
        for (auto& [block, seed] : part) {
            auto [it, inserted] = lang.blocks.emplace(block, seed);
            if (!inserted) it->second = std::min(it->second, seed);
        }
    return lang;
}

ApproximationSft k_approximation(const TraceBlockLanguage& lang) {
    ApproximationSft sft;
    sft.rule_name = lang.rule_name;
    sft.n = lang.n;
    sft.k = lang.k;

    if (lang.k == 1) {
        // 1-approximation: any sequence of occurring letters.
        for (const auto& [block, seed] : lang.blocks) sft.vertices.push_back(block);
        sft.graph.adj.resize(sft.vertices.size());
        for (std::uint32_t u = 0; u < sft.vertices.size(); ++u)
            for (std::uint32_t v = 0; v < sft.vertices.size(); ++v)
                sft.graph.adj[u].push_back(v);
        return sft;
    }

    std::set<TraceBlock> stubs; // (k-1)-blocks occurring in some allowed block
    for (const auto& [block, seed] : lang.blocks) {
        stubs.insert(TraceBlock(block.begin(), block.end() - 1));
        stubs.insert(TraceBlock(block.begin() + 1, block.end()));
    }
    sft.vertices.assign(stubs.begin(), stubs.end());
    const auto vertex_id = [&](const TraceBlock& b) {
        const auto it = std::lower_bound(sft.vertices.begin(), sft.vertices.end(), b);
        assert(it != sft.vertices.end() && *it == b);
        return static_cast<std::uint32_t>(it - sft.vertices.begin());
    };

    sft.graph.adj.resize(sft.vertices.size());
    for (const auto& [block, seed] : lang.blocks) {
        const std::uint32_t u = vertex_id(TraceBlock(block.begin(), block.end() - 1));
        const std::uint32_t v = vertex_id(TraceBlock(block.begin() + 1, block.end()));
        sft.graph.adj[u].push_back(v);
    }
    for (auto& row : sft.graph.adj) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return sft;
}

SftTransitivity sft_is_transitive(const ApproximationSft& sft) {
    SftTransitivity result;
    result.strict = strongly_connected_components(sft.graph).strongly_connected();
    const Digraph essential = essential_subgraph(sft.graph);
    result.essential_empty = essential.size() == 0;
    result.essential =
        !result.essential_empty &&
        strongly_connected_components(essential).strongly_connected();
    return result;
}

SftMixing sft_is_mixing(const ApproximationSft& sft) {
    SftMixing result;
    const Digraph essential = essential_subgraph(sft.graph);
    result.essential_empty = essential.size() == 0;
    if (result.essential_empty) return result;
    result.essential_strongly_connected =
        strongly_connected_components(essential).strongly_connected();
    if (result.essential_strongly_connected) {
        result.period = digraph_period(essential);
        result.mixing = result.period == 1;
    }
    return result;
}

bool approximation_equals_graph(const Rule& rule, int n, int seed_width_cap,
                                const GraphLimits& limits) {
    const TraceBlockLanguage lang = trace_blocks(rule, n, 2, seed_width_cap);
    std::set<std::pair<std::uint64_t, std::uint64_t>> trace_edges;
    for (const auto& [block, seed] : lang.blocks) trace_edges.insert({block[0], block[1]});

    const TransitionGraph graph = build_graph(rule, n, limits);
    std::set<std::pair<std::uint64_t, std::uint64_t>> graph_edges;
    for (std::uint32_t v = 0; v < graph.vertex_count; ++v)
        for (std::uint32_t c = 0; c < graph.control_count; ++c)
            graph_edges.insert({v, graph.successor(v, c)});

    return trace_edges == graph_edges;
}

std::optional<int> trace_reach(const Rule& rule, int n, const RegionWord& w, const RegionWord& u,
                               int t_max, int seed_width_cap) {
    if (w.length() != n || u.length() != n)
        throw input_error("trace windows must have length n = " + std::to_string(n));
    if (t_max < 0) throw input_error("need t_max >= 0");
    const int r = rule.radius();
    if (n + 2 * r * t_max > seed_width_cap)
        throw resource_error("trace reachability at horizon " + std::to_string(t_max) +
                             " needs seeds of width " + std::to_string(n + 2 * r * t_max) +
                             ", cap is " + std::to_string(seed_width_cap));

    if (w == u) return 0;
    for (int T = 1; T <= t_max; ++T) {
        const int seed_width = n + 2 * r * T;
        const int ctx = r * T; // free cells on each side of the fixed window
        const std::uint64_t context_count = 1ull << (2 * ctx);
        for (std::uint64_t context = 0; context < context_count; ++context) {
            const std::uint64_t left = context >> ctx;
            const std::uint64_t right = context & ((1ull << ctx) - 1);
            std::uint64_t row = (left << (n + ctx)) | (w.bits() << ctx) | right;
            int width = seed_width;
            for (int t = 0; t < T; ++t) {
                row = step_row(rule, row, width);
                width -= 2 * r;
            }
            if (row == u.bits()) return T;
        }
    }
    return std::nullopt;
}

} // namespace cactl
