#include "cactl/transition_graph.hpp"

#include "cactl/parallel.hpp"

#include <algorithm>
#include <cassert>

namespace cactl {

Digraph TransitionGraph::dedup_adjacency() const {
    Digraph g;
    g.adj.resize(vertex_count);
    for (std::uint32_t v = 0; v < vertex_count; ++v) {
        auto& row = g.adj[v];
        row.assign(successors.begin() + static_cast<std::ptrdiff_t>(v) * control_count,
                   successors.begin() + static_cast<std::ptrdiff_t>(v + 1) * control_count);
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return g;
}

TransitionGraph build_graph(const Rule& rule, int n, const GraphLimits& limits) {
    if (n < 1) throw input_error("region length must be >= 1");
    if (n > limits.max_n)
        throw resource_error("region length " + std::to_string(n) + " exceeds cap " +
                             std::to_string(limits.max_n));
    const int r = rule.radius();
    const std::uint64_t vertices = 1ull << n;
    const std::uint64_t controls = 1ull << (2 * r);
    if (vertices * controls > limits.max_entries)
        throw resource_error("graph needs " + std::to_string(vertices * controls) +
                             " successor entries, cap is " + std::to_string(limits.max_entries));

    TransitionGraph graph;
    graph.n = n;
    graph.radius = r;
    graph.rule_name = rule.name();
    graph.vertex_count = static_cast<std::uint32_t>(vertices);
    graph.control_count = static_cast<std::uint32_t>(controls);
    graph.successors.resize(vertices * controls);

    // Vertex ranges are write-disjoint, so construction parallelizes freely.
    parallel_ranges(vertices, thread_hint(), [&](std::uint64_t begin, std::uint64_t end, unsigned) {
        for (std::uint64_t v = begin; v < end; ++v) {
            const RegionWord w(n, v);
            for (std::uint32_t c = 0; c < controls; ++c) {
                const RegionWord next =
                    step_controlled(rule, w, ControlPair::from_index(r, c));
                graph.successors[v * controls + c] = static_cast<std::uint32_t>(next.bits());
            }
        }
    });
    return graph;
}

SccResult scc(const TransitionGraph& graph) {
    return strongly_connected_components(graph.dedup_adjacency());
}

RegionalControllability is_regionally_controllable(const TransitionGraph& graph) {
    const SccResult components = scc(graph);
    RegionalControllability verdict;
    verdict.scc_count = components.count;
    verdict.controllable = components.strongly_connected();
    if (!verdict.controllable) {
        // Component 0 is popped first, so nothing outside it is reachable
        // from it; the smallest vertices on each side give a stable witness.
        std::uint32_t from = 0, to = 0;
        bool have_from = false, have_to = false;
        for (std::uint32_t v = 0; v < graph.vertex_count && !(have_from && have_to); ++v) {
            if (!have_from && components.component[v] == 0) {
                from = v;
                have_from = true;
            } else if (!have_to && components.component[v] != 0) {
                to = v;
                have_to = true;
            }
        }
        assert(have_from && have_to);
        verdict.witness = {graph.word(from), graph.word(to)};
    }
    return verdict;
}

std::uint64_t graph_period(const TransitionGraph& graph) {
    return digraph_period(graph.dedup_adjacency());
}

PrimitivityResult is_primitive(const TransitionGraph& graph) {
    PrimitivityResult result;
    const Digraph g = graph.dedup_adjacency();
    result.strongly_connected = strongly_connected_components(g).strongly_connected();
    if (result.strongly_connected) {
        result.period = digraph_period(g);
        result.primitive = result.period == 1;
    }
    return result;
}

std::optional<std::uint64_t> primitivity_index(const TransitionGraph& graph, std::uint64_t cap,
                                               bool* capped) {
    if (!is_primitive(graph).primitive)
        throw precondition_error("primitivity index requires a primitive transition graph");
    return boolean_power_positivity_index(graph.dedup_adjacency(), cap, capped);
}

namespace {

void check_endpoints(const TransitionGraph& graph, const RegionWord& s0, const RegionWord& sd) {
    if (s0.length() != graph.n || sd.length() != graph.n)
        throw input_error("plan endpoints must have the graph's region length " +
                          std::to_string(graph.n));
}

ControlPlan backtrack_plan(const TransitionGraph& graph, const RegionWord& s0,
                           const RegionWord& sd, const std::vector<std::uint32_t>& parent,
                           const std::vector<std::uint32_t>& via) {
    ControlPlan plan;
    plan.initial = s0;
    plan.target = sd;
    std::uint32_t v = static_cast<std::uint32_t>(sd.bits());
    const std::uint32_t start = static_cast<std::uint32_t>(s0.bits());
    while (v != start) {
        plan.steps.push_back(ControlPair::from_index(graph.radius, via[v]));
        v = parent[v];
    }
    std::reverse(plan.steps.begin(), plan.steps.end());
    return plan;
}

} // namespace

std::optional<ControlPlan> synthesize_control(const TransitionGraph& graph, const RegionWord& s0,
                                              const RegionWord& sd) {
    check_endpoints(graph, s0, sd);
    const std::uint32_t start = static_cast<std::uint32_t>(s0.bits());
    const std::uint32_t goal = static_cast<std::uint32_t>(sd.bits());
    if (start == goal) return ControlPlan{s0, sd, {}};

    constexpr std::uint32_t unseen = 0xffffffffu;
    std::vector<std::uint32_t> parent(graph.vertex_count, unseen);
    std::vector<std::uint32_t> via(graph.vertex_count, 0);
    std::vector<std::uint32_t> queue;
    queue.reserve(graph.vertex_count);
    queue.push_back(start);
    parent[start] = start;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t v = queue[head];
        for (std::uint32_t c = 0; c < graph.control_count; ++c) {
            const std::uint32_t w = graph.successor(v, c);
            if (parent[w] != unseen) continue;
            parent[w] = v;
            via[w] = c;
            if (w == goal) return backtrack_plan(graph, s0, sd, parent, via);
            queue.push_back(w);
        }
    }
    return std::nullopt;
}

std::optional<ControlPlan> synthesize_control_exact_time(const TransitionGraph& graph,
                                                         const RegionWord& s0,
                                                         const RegionWord& sd, int T,
                                                         int horizon_cap) {
    check_endpoints(graph, s0, sd);
    if (T < 0) throw input_error("exact horizon must be >= 0");
    if (T > horizon_cap)
        throw resource_error("exact horizon " + std::to_string(T) + " exceeds cap " +
                             std::to_string(horizon_cap));
    const std::uint32_t goal = static_cast<std::uint32_t>(sd.bits());

    // layers[t] = bitset of vertices reachable from s0 in exactly t steps.
    const std::size_t words = (graph.vertex_count + 63) / 64;
    const auto test = [words](const std::vector<std::uint64_t>& bits, std::size_t layer,
                              std::uint32_t v) {
        return (bits[layer * words + v / 64] >> (v % 64)) & 1u;
    };
    std::vector<std::uint64_t> layers(words * (static_cast<std::size_t>(T) + 1), 0);
    layers[s0.bits() / 64] |= 1ull << (s0.bits() % 64);
    for (int t = 0; t < T; ++t) {
        for (std::uint32_t v = 0; v < graph.vertex_count; ++v) {
            if (!test(layers, static_cast<std::size_t>(t), v)) continue;
            for (std::uint32_t c = 0; c < graph.control_count; ++c) {
                const std::uint32_t w = graph.successor(v, c);
                layers[(static_cast<std::size_t>(t) + 1) * words + w / 64] |= 1ull << (w % 64);
            }
        }
    }
    if (!test(layers, static_cast<std::size_t>(T), goal)) return std::nullopt;

    ControlPlan plan;
    plan.initial = s0;
    plan.target = sd;
    plan.steps.resize(static_cast<std::size_t>(T));
    std::uint32_t current = goal;
    for (int t = T; t > 0; --t) {
        bool found = false;
        for (std::uint32_t v = 0; v < graph.vertex_count && !found; ++v) {
            if (!test(layers, static_cast<std::size_t>(t) - 1, v)) continue;
            for (std::uint32_t c = 0; c < graph.control_count; ++c)
                if (graph.successor(v, c) == current) {
                    plan.steps[static_cast<std::size_t>(t - 1)] =
                        ControlPair::from_index(graph.radius, c);
                    current = v;
                    found = true;
                    break;
                }
        }
        assert(found);
    }
    return plan;
}

SweepReport sweep(const Rule& rule, int n_min, int n_max, const SweepOptions& options) {
    if (n_min < 1 || n_max < n_min) throw input_error("need 1 <= n_min <= n_max");
    SweepReport report;
    report.rule_name = rule.name();
    report.n_min = n_min;
    report.n_max = n_max;
    report.controllable_at_every_n_in_range = true;
    for (int n = n_min; n <= n_max; ++n) {
        const TransitionGraph graph = build_graph(rule, n, options.limits);
        SweepRow row;
        row.n = n;
        row.vertices = graph.vertex_count;
        const RegionalControllability verdict = is_regionally_controllable(graph);
        row.scc_count = verdict.scc_count;
        row.regionally_controllable = verdict.controllable;
        if (verdict.controllable) {
            row.period = graph_period(graph);
            row.primitive = *row.period == 1;
            if (row.primitive && options.compute_index) {
                bool capped = false;
                row.primitivity_index =
                    boolean_power_positivity_index(graph.dedup_adjacency(), options.index_cap,
                                                   &capped);
                row.index_capped = capped;
            }
        }
        report.controllable_at_every_n_in_range &= row.regionally_controllable;
        report.rows.push_back(row);
    }
    return report;
}

} // namespace cactl
