#include "cactl/rule.hpp"

#include <cassert>
#include <charconv>

namespace cactl {

namespace {

std::uint64_t table_size_for_radius(int radius) {
    return 1ull << (2 * radius + 1);
}

int parse_int(std::string_view text, const char* what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw input_error(std::string("malformed ") + what + ": '" + std::string(text) + "'");
    return value;
}

} // namespace

Rule::Rule(int radius, std::vector<std::uint8_t> table, std::string name)
    : radius_(radius), name_(std::move(name)), table_(std::move(table)) {
    assert(radius_ >= 1);
    assert(table_.size() == table_size_for_radius(radius_));
}

Rule Rule::wolfram(unsigned code) {
    if (code > 255) throw input_error("wolfram code " + std::to_string(code) + " outside [0, 255]");
    std::vector<std::uint8_t> table(8);
    for (unsigned i = 0; i < 8; ++i) table[i] = static_cast<std::uint8_t>((code >> i) & 1u);
    return Rule(1, std::move(table), "wolfram:" + std::to_string(code));
}

Rule Rule::from_table(int radius, std::vector<std::uint8_t> table, std::string name) {
    if (radius < 1) throw input_error("rule radius must be >= 1");
    if (radius > 12) throw input_error("rule radius " + std::to_string(radius) + " exceeds 12");
    if (table.size() != table_size_for_radius(radius))
        throw input_error("rule table must have 2^(2r+1) = " +
                          std::to_string(table_size_for_radius(radius)) + " entries, got " +
                          std::to_string(table.size()));
    for (auto v : table)
        if (v > 1) throw input_error("rule table entries must be 0 or 1");
    return Rule(radius, std::move(table), std::move(name));
}

Rule parse_rule(std::string_view spec) {
    constexpr std::string_view wolfram_prefix = "wolfram:";
    constexpr std::string_view table_prefix = "table:r=";
    if (spec.starts_with(wolfram_prefix)) {
        int code = parse_int(spec.substr(wolfram_prefix.size()), "wolfram code");
        if (code < 0 || code > 255)
            throw input_error("wolfram code " + std::to_string(code) + " outside [0, 255]");
        return Rule::wolfram(static_cast<unsigned>(code));
    }
    if (spec.starts_with(table_prefix)) {
        std::string_view rest = spec.substr(table_prefix.size());
        auto colon = rest.find(':');
        if (colon == std::string_view::npos)
            throw input_error("table spec must look like table:r=<r>:<bits>");
        int radius = parse_int(rest.substr(0, colon), "table radius");
        if (radius < 1 || radius > 12)
            throw input_error("table radius " + std::to_string(radius) + " outside [1, 12]");
        std::string_view bits = rest.substr(colon + 1);
        const std::uint64_t size = table_size_for_radius(radius);
        if (bits.size() != size)
            throw input_error("table bit string must have " + std::to_string(size) +
                              " bits, got " + std::to_string(bits.size()));
        // Bits list outputs for neighborhoods in descending encoding order,
        // matching the binary expansion of a Wolfram code.
        std::vector<std::uint8_t> table(size);
        for (std::uint64_t i = 0; i < size; ++i) {
            char c = bits[static_cast<std::size_t>(i)];
            if (c != '0' && c != '1') throw input_error("table bit string must be binary");
            table[static_cast<std::size_t>(size - 1 - i)] = static_cast<std::uint8_t>(c - '0');
        }
        return Rule::from_table(radius, std::move(table), std::string(spec));
    }
    throw input_error("rule spec must be wolfram:<code> or table:r=<r>:<bits>, got '" +
                      std::string(spec) + "'");
}

std::uint8_t apply_local(const Rule& rule, const RegionWord& neighborhood) {
    if (neighborhood.length() != rule.diameter())
        throw input_error("neighborhood must have 2r+1 = " + std::to_string(rule.diameter()) +
                          " cells, got " + std::to_string(neighborhood.length()));
    return rule.apply(static_cast<std::uint32_t>(neighborhood.bits()));
}

RegionWord step_controlled(const Rule& rule, const RegionWord& w, const ControlPair& ctrl) {
    const int n = w.length();
    const int r = rule.radius();
    if (n < 1) throw input_error("region must have at least one cell");
    if (ctrl.radius() != r)
        throw input_error("control words must have length r = " + std::to_string(r));
    const RegionWord padded = ctrl.left.concat(w).concat(ctrl.right);
    return step_free(rule, padded);
}

RegionWord step_free(const Rule& rule, const RegionWord& w) {
    const int r = rule.radius();
    const int d = rule.diameter();
    const int out_len = w.length() - 2 * r;
    if (out_len < 1)
        throw input_error("strip of length " + std::to_string(w.length()) +
                          " too short for radius " + std::to_string(r));
    const std::uint64_t mask = (1ull << d) - 1;
    std::uint64_t out = 0;
    for (int i = 0; i < out_len; ++i) {
        const std::uint32_t window =
            static_cast<std::uint32_t>((w.bits() >> (out_len - 1 - i)) & mask);
        out = (out << 1) | rule.apply(window);
    }
    return RegionWord(out_len, out);
}

Trajectory evolve_controlled(const Rule& rule, const RegionWord& w0,
                             std::span<const ControlPair> controls) {
    Trajectory traj;
    traj.rule_name = rule.name();
    traj.region_length = w0.length();
    traj.rows.reserve(controls.size() + 1);
    RegionWord current = w0;
    for (const ControlPair& ctrl : controls) {
        RegionWord next = step_controlled(rule, current, ctrl);
        traj.rows.push_back({current, ctrl});
        current = next;
    }
    traj.rows.push_back({current, std::nullopt});
    return traj;
}

BlockMap compose_block_map(const Rule& rule, int t, std::uint64_t table_cap) {
    if (t < 0) throw input_error("iterate exponent must be >= 0");
    if (t == 0) return BlockMap{0, {0, 1}};

    const int r = rule.radius();
    const std::uint64_t final_size = 1ull << (2 * r * t + 1);
    if (2 * r * t + 1 >= 63 || final_size > table_cap)
        throw resource_error("composed table for F^" + std::to_string(t) + " needs 2^" +
                             std::to_string(2 * r * t + 1) + " entries, cap is " +
                             std::to_string(table_cap));

    // Build F^(s+1) from F^s: the output is the base rule applied to the 2r+1
    // adjacent outputs of F^s inside the wider window.
    BlockMap current{r, rule.table()};
    for (int s = 1; s < t; ++s) {
        const int next_radius = r * (s + 1);
        const int cur_width = 2 * r * s + 1;
        const std::uint64_t cur_mask = (1ull << cur_width) - 1;
        std::vector<std::uint8_t> next(1ull << (2 * next_radius + 1));
        const std::uint64_t next_size = next.size();
        for (std::uint64_t u = 0; u < next_size; ++u) {
            std::uint32_t neighborhood = 0;
            for (int j = 2 * r; j >= 0; --j) {
                const std::uint32_t inner =
                    static_cast<std::uint32_t>((u >> j) & cur_mask);
                neighborhood = (neighborhood << 1) | current.table[inner];
            }
            next[static_cast<std::size_t>(u)] = rule.apply(neighborhood);
        }
        current = BlockMap{next_radius, std::move(next)};
    }
    return current;
}

Rule compose_rule(const Rule& rule, int t, std::uint64_t table_cap) {
    if (t < 1) throw input_error("compose_rule needs t >= 1");
    BlockMap m = compose_block_map(rule, t, table_cap);
    return Rule::from_table(m.radius, std::move(m.table),
                            rule.name() + "^" + std::to_string(t));
}

bool block_maps_equal(const BlockMap& a, const BlockMap& b) {
    const BlockMap& big = a.radius >= b.radius ? a : b;
    const BlockMap& small = a.radius >= b.radius ? b : a;
    const int shift = big.radius - small.radius;
    const std::uint64_t small_mask = (1ull << (2 * small.radius + 1)) - 1;
    const std::uint64_t big_size = 1ull << (2 * big.radius + 1);
    for (std::uint64_t u = 0; u < big_size; ++u) {
        const std::uint64_t center = (u >> shift) & small_mask;
        if (big.table[static_cast<std::size_t>(u)] !=
            small.table[static_cast<std::size_t>(center)])
            return false;
    }
    return true;
}

bool block_map_is_constant(const BlockMap& m, std::uint8_t* value) {
    const std::uint8_t first = m.table.front();
    for (auto v : m.table)
        if (v != first) return false;
    if (value) *value = first;
    return true;
}

std::optional<EventualPeriodicity> check_eventually_periodic(const Rule& rule, int m_max,
                                                             int p_max,
                                                             std::uint64_t table_cap) {
    if (m_max < 0 || p_max < 1) throw input_error("need m_max >= 0 and p_max >= 1");
    // Tables are composed on demand; the cap error fires only when a table
    // is actually built.
    std::vector<BlockMap> iterates;
    auto ensure = [&](int t) {
        while (static_cast<int>(iterates.size()) <= t)
            iterates.push_back(
                compose_block_map(rule, static_cast<int>(iterates.size()), table_cap));
    };
    for (int m = 0; m <= m_max; ++m)
        for (int p = 1; p <= p_max; ++p) {
            ensure(m + p);
            if (block_maps_equal(iterates[static_cast<std::size_t>(m + p)],
                                 iterates[static_cast<std::size_t>(m)]))
                return EventualPeriodicity{m, p};
        }
    return std::nullopt;
}

std::optional<Nilpotency> check_nilpotent_bounded(const Rule& rule, int t_max,
                                                  std::uint64_t table_cap) {
    if (t_max < 0) throw input_error("need t_max >= 0");
    for (int t = 1; t <= t_max; ++t) {
        BlockMap m = compose_block_map(rule, t, table_cap);
        std::uint8_t q = 0;
        if (block_map_is_constant(m, &q)) return Nilpotency{q, t};
    }
    return std::nullopt;
}

} // namespace cactl
