#pragma once

// Test-side oracles, deliberately independent of the library's bit-packed
// evolution and graph analyses: strings for configurations, dense char
// matrices for reachability, naive Boolean products for matrix powers.

#include "cactl/rule.hpp"

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace oracle {

using BoolMatrix = std::vector<std::vector<char>>;

inline char apply_rule(const cactl::Rule& rule, const std::string& neighborhood) {
    std::uint32_t index = 0;
    for (char c : neighborhood) index = (index << 1) | static_cast<std::uint32_t>(c - '0');
    return static_cast<char>('0' + rule.apply(index));
}

// Free step on a strip: output wherever the full neighborhood fits.
inline std::string step_free(const cactl::Rule& rule, const std::string& row) {
    const int d = rule.diameter();
    std::string out;
    for (std::size_t i = 0; i + d <= row.size(); ++i)
        out += apply_rule(rule, row.substr(i, static_cast<std::size_t>(d)));
    return out;
}

inline std::string step_controlled(const cactl::Rule& rule, const std::string& w,
                                   const std::string& x, const std::string& y) {
    return step_free(rule, x + w + y);
}

inline std::string control_side(int radius, std::uint32_t bits) {
    std::string s;
    for (int i = radius - 1; i >= 0; --i) s += static_cast<char>('0' + ((bits >> i) & 1u));
    return s;
}

inline std::string word_string(int n, std::uint64_t bits) {
    std::string s;
    for (int i = n - 1; i >= 0; --i) s += static_cast<char>('0' + ((bits >> i) & 1u));
    return s;
}

inline std::uint64_t word_bits(const std::string& s) {
    std::uint64_t bits = 0;
    for (char c : s) bits = (bits << 1) | static_cast<std::uint64_t>(c - '0');
    return bits;
}

// Boolean adjacency of the controlled one-step relation on A^n.
inline BoolMatrix adjacency_matrix(const cactl::Rule& rule, int n) {
    const int r = rule.radius();
    const std::uint64_t vertices = 1ull << n;
    const std::uint32_t side = 1u << r;
    BoolMatrix m(vertices, std::vector<char>(vertices, 0));
    for (std::uint64_t v = 0; v < vertices; ++v) {
        const std::string w = word_string(n, v);
        for (std::uint32_t xb = 0; xb < side; ++xb)
            for (std::uint32_t yb = 0; yb < side; ++yb) {
                const std::string next =
                    step_controlled(rule, w, control_side(r, xb), control_side(r, yb));
                m[v][word_bits(next)] = 1;
            }
    }
    return m;
}

// Reflexive-free transitive closure, Floyd-Warshall style.
inline BoolMatrix transitive_closure(BoolMatrix m) {
    const std::size_t n = m.size();
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            if (!m[i][k]) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (m[k][j]) m[i][j] = 1;
        }
    return m;
}

inline bool all_positive(const BoolMatrix& m) {
    for (const auto& row : m)
        for (char v : row)
            if (!v) return false;
    return true;
}

inline BoolMatrix multiply(const BoolMatrix& a, const BoolMatrix& b) {
    const std::size_t n = a.size();
    BoolMatrix out(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (!a[i][k]) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (b[k][j]) out[i][j] = 1;
        }
    return out;
}

// Least M <= cap with m^M entrywise positive; -1 if none.
inline long long positivity_index(const BoolMatrix& m, long long cap) {
    BoolMatrix power = m;
    for (long long step = 1; step <= cap; ++step) {
        if (all_positive(power)) return step;
        if (step < cap) power = multiply(power, m);
    }
    return -1;
}

// gcd of cycle lengths via nonzero traces of powers up to the vertex count.
inline std::uint64_t period_gcd(const BoolMatrix& m) {
    const std::size_t n = m.size();
    BoolMatrix power = m;
    std::uint64_t g = 0;
    for (std::size_t t = 1; t <= n; ++t) {
        for (std::size_t i = 0; i < n; ++i)
            if (power[i][i]) {
                g = std::gcd(g, static_cast<std::uint64_t>(t));
                break;
            }
        if (t < n) power = multiply(power, m);
    }
    return g;
}

// Breadth-first distance by repeated set images; -1 if unreachable.
inline long long layered_distance(const BoolMatrix& adj, std::uint64_t from, std::uint64_t to) {
    const std::size_t n = adj.size();
    std::vector<char> reached(n, 0), frontier(n, 0);
    reached[from] = frontier[from] = 1;
    if (from == to) return 0;
    for (long long t = 1; t <= static_cast<long long>(n); ++t) {
        std::vector<char> next(n, 0);
        for (std::size_t v = 0; v < n; ++v) {
            if (!frontier[v]) continue;
            for (std::size_t w = 0; w < n; ++w)
                if (adj[v][w] && !reached[w]) next[w] = 1;
        }
        bool any = false;
        for (std::size_t w = 0; w < n; ++w)
            if (next[w]) {
                if (w == to) return t;
                reached[w] = 1;
                any = true;
            }
        if (!any) return -1;
        frontier = std::move(next);
    }
    return -1;
}

// Reachability in exactly T steps via layered images.
inline bool exact_time_reachable(const BoolMatrix& adj, std::uint64_t from, std::uint64_t to,
                                 int T) {
    const std::size_t n = adj.size();
    std::vector<char> layer(n, 0);
    layer[from] = 1;
    for (int t = 0; t < T; ++t) {
        std::vector<char> next(n, 0);
        for (std::size_t v = 0; v < n; ++v) {
            if (!layer[v]) continue;
            for (std::size_t w = 0; w < n; ++w)
                if (adj[v][w]) next[w] = 1;
        }
        layer = std::move(next);
    }
    return layer[to] != 0;
}

} // namespace oracle
