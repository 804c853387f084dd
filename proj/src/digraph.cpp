#include "cactl/digraph.hpp"

#include "cactl/errors.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <numeric>
#include <set>

namespace cactl {

namespace {
constexpr std::uint32_t unset = 0xffffffffu;
}

SccResult strongly_connected_components(const Digraph& g) {
    const std::uint32_t n = g.size();
    SccResult result;
    result.component.assign(n, unset);

    std::vector<std::uint32_t> index(n, unset);
    std::vector<std::uint32_t> lowlink(n, 0);
    std::vector<std::uint8_t> on_stack(n, 0);
    std::vector<std::uint32_t> stack;
    stack.reserve(n);

    struct Frame {
        std::uint32_t vertex;
        std::uint32_t next_child;
    };
    std::vector<Frame> frames;

    std::uint32_t counter = 0;
    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != unset) continue;
        frames.push_back({root, 0});
        index[root] = lowlink[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;

        while (!frames.empty()) {
            const std::uint32_t v = frames.back().vertex;
            const auto& succ = g.adj[v];
            if (frames.back().next_child < succ.size()) {
                const std::uint32_t w = succ[frames.back().next_child++];
                if (index[w] == unset) {
                    index[w] = lowlink[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    lowlink[v] = std::min(lowlink[v], index[w]);
                }
            } else {
                if (lowlink[v] == index[v]) {
                    std::uint32_t size = 0;
                    while (true) {
                        const std::uint32_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        result.component[w] = result.count;
                        ++size;
                        if (w == v) break;
                    }
                    result.sizes.push_back(size);
                    ++result.count;
                }
                frames.pop_back();
                if (!frames.empty()) {
                    const std::uint32_t parent = frames.back().vertex;
                    lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
                }
            }
        }
    }

    std::set<std::pair<std::uint32_t, std::uint32_t>> cross;
    for (std::uint32_t v = 0; v < n; ++v)
        for (std::uint32_t w : g.adj[v])
            if (result.component[v] != result.component[w])
                cross.insert({result.component[v], result.component[w]});
    result.condensation_edges.assign(cross.begin(), cross.end());
    return result;
}

std::uint64_t digraph_period(const Digraph& g) {
    const std::uint32_t n = g.size();
    if (n == 0) throw precondition_error("period of an empty graph");
    if (!strongly_connected_components(g).strongly_connected())
        throw precondition_error("period requires a strongly connected graph");

    std::vector<std::int64_t> depth(n, -1);
    std::vector<std::uint32_t> queue;
    queue.reserve(n);
    queue.push_back(0);
    depth[0] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t v = queue[head];
        for (std::uint32_t w : g.adj[v])
            if (depth[w] < 0) {
                depth[w] = depth[v] + 1;
                queue.push_back(w);
            }
    }

    std::uint64_t period = 0;
    for (std::uint32_t v = 0; v < n; ++v)
        for (std::uint32_t w : g.adj[v]) {
            // Breadth-first layering gives depth(w) <= depth(v) + 1, so the
            // difference is never negative; tree edges contribute 0.
            const std::uint64_t diff = static_cast<std::uint64_t>(depth[v] + 1 - depth[w]);
            period = std::gcd(period, diff);
        }
    return period;
}

Digraph essential_subgraph(const Digraph& g, std::vector<std::uint32_t>* kept) {
    const std::uint32_t n = g.size();
    std::vector<std::uint32_t> out_deg(n, 0), in_deg(n, 0);
    for (std::uint32_t v = 0; v < n; ++v) {
        out_deg[v] = static_cast<std::uint32_t>(g.adj[v].size());
        for (std::uint32_t w : g.adj[v]) ++in_deg[w];
    }

    std::vector<std::uint8_t> removed(n, 0);
    std::vector<std::uint32_t> worklist;
    for (std::uint32_t v = 0; v < n; ++v)
        if (out_deg[v] == 0 || in_deg[v] == 0) {
            removed[v] = 1;
            worklist.push_back(v);
        }
    // Reverse adjacency for in-degree decrements.
    std::vector<std::vector<std::uint32_t>> radj(n);
    for (std::uint32_t v = 0; v < n; ++v)
        for (std::uint32_t w : g.adj[v]) radj[w].push_back(v);

    while (!worklist.empty()) {
        const std::uint32_t v = worklist.back();
        worklist.pop_back();
        for (std::uint32_t w : g.adj[v])
            if (!removed[w] && --in_deg[w] == 0) {
                removed[w] = 1;
                worklist.push_back(w);
            }
        for (std::uint32_t u : radj[v])
            if (!removed[u] && --out_deg[u] == 0) {
                removed[u] = 1;
                worklist.push_back(u);
            }
    }

    std::vector<std::uint32_t> remap(n, unset);
    std::vector<std::uint32_t> ids;
    for (std::uint32_t v = 0; v < n; ++v)
        if (!removed[v]) {
            remap[v] = static_cast<std::uint32_t>(ids.size());
            ids.push_back(v);
        }

    Digraph sub;
    sub.adj.resize(ids.size());
    for (std::uint32_t v : ids)
        for (std::uint32_t w : g.adj[v])
            if (!removed[w]) sub.adj[remap[v]].push_back(remap[w]);
    if (kept) *kept = std::move(ids);
    return sub;
}

namespace {

// Boolean row-matrix with 64-bit words.
struct BitMatrix {
    std::uint32_t n = 0;
    std::uint32_t words = 0;
    std::vector<std::uint64_t> rows;

    explicit BitMatrix(std::uint32_t size)
        : n(size), words((size + 63) / 64), rows(static_cast<std::size_t>(size) * words, 0) {}

    std::uint64_t* row(std::uint32_t i) { return rows.data() + static_cast<std::size_t>(i) * words; }
    const std::uint64_t* row(std::uint32_t i) const {
        return rows.data() + static_cast<std::size_t>(i) * words;
    }
    void set(std::uint32_t i, std::uint32_t j) { row(i)[j / 64] |= 1ull << (j % 64); }

    bool all_rows_full() const {
        const std::uint64_t last_mask =
            (n % 64 == 0) ? ~0ull : ((1ull << (n % 64)) - 1);
        for (std::uint32_t i = 0; i < n; ++i) {
            const std::uint64_t* r = row(i);
            for (std::uint32_t w = 0; w + 1 < words; ++w)
                if (r[w] != ~0ull) return false;
            if (r[words - 1] != last_mask) return false;
        }
        return true;
    }
};

// product = left * adj, where row i of the product is the union of adj rows
// over the set bits of left's row i.
void multiply(const BitMatrix& left, const BitMatrix& adj, BitMatrix& product) {
    std::fill(product.rows.begin(), product.rows.end(), 0ull);
    for (std::uint32_t i = 0; i < left.n; ++i) {
        const std::uint64_t* lr = left.row(i);
        std::uint64_t* pr = product.row(i);
        for (std::uint32_t w = 0; w < left.words; ++w) {
            std::uint64_t bits = lr[w];
            while (bits) {
                const std::uint32_t j = w * 64 + static_cast<std::uint32_t>(std::countr_zero(bits));
                bits &= bits - 1;
                const std::uint64_t* ar = adj.row(j);
                for (std::uint32_t k = 0; k < adj.words; ++k) pr[k] |= ar[k];
            }
        }
    }
}

} // namespace

std::optional<std::uint64_t> boolean_power_positivity_index(const Digraph& g, std::uint64_t cap,
                                                            bool* capped) {
    if (capped) *capped = false;
    const std::uint32_t n = g.size();
    if (n == 0) throw precondition_error("positivity index of an empty graph");

    BitMatrix adj(n);
    for (std::uint32_t v = 0; v < n; ++v)
        for (std::uint32_t w : g.adj[v]) adj.set(v, w);

    BitMatrix power = adj;
    BitMatrix scratch(n);
    for (std::uint64_t m = 1; m <= cap; ++m) {
        if (power.all_rows_full()) return m;
        if (m < cap) {
            multiply(power, adj, scratch);
            std::swap(power.rows, scratch.rows);
        }
    }
    if (capped) *capped = true;
    return std::nullopt;
}

} // namespace cactl
