#pragma once

#include "cactl/word.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cactl {

/// Local transition table of a radius-r Boolean CA. The table is indexed by
/// the neighborhood word read left to right as a binary number (leftmost cell
/// = most significant bit), so for radius 1 the table is exactly the Wolfram
/// code's bit expansion: table[4*b2 + 2*b1 + b0] = bit (4*b2+2*b1+b0) of the
/// code.
class Rule {
public:
    static Rule wolfram(unsigned code);
    static Rule from_table(int radius, std::vector<std::uint8_t> table, std::string name);

    int radius() const { return radius_; }
    int diameter() const { return 2 * radius_ + 1; }
    const std::string& name() const { return name_; }
    const std::vector<std::uint8_t>& table() const { return table_; }

    /// Table lookup by neighborhood encoding; no width validation.
    std::uint8_t apply(std::uint32_t neighborhood) const { return table_[neighborhood]; }

private:
    Rule(int radius, std::vector<std::uint8_t> table, std::string name);

    int radius_;
    std::string name_;
    std::vector<std::uint8_t> table_;
};

/// Accepts "wolfram:<0..255>" (radius 1) or "table:r=<r>:<2^(2r+1) bits>",
/// where the bit string lists outputs for neighborhoods in descending
/// encoding order, exactly like the binary expansion of a Wolfram code
/// ("table:r=1:01011010" is rule 90).
Rule parse_rule(std::string_view spec);

/// Table lookup for a full neighborhood word of length 2r+1.
std::uint8_t apply_local(const Rule& rule, const RegionWord& neighborhood);

/// One controlled step on a region of length n >= 1: the local rule is
/// applied at every position of left . w . right where a full neighborhood
/// exists, which is exactly the n region cells.
RegionWord step_controlled(const Rule& rule, const RegionWord& w, const ControlPair& ctrl);

/// One free (uncontrolled) step on a finite strip: the rule is applied
/// wherever the neighborhood fits, shrinking the strip by r on each side.
/// Requires |w| >= 2r+1.
RegionWord step_free(const Rule& rule, const RegionWord& w);

Trajectory evolve_controlled(const Rule& rule, const RegionWord& w0,
                             std::span<const ControlPair> controls);

/// A sliding-block map of arbitrary radius >= 0, the shape of an iterate F^t.
/// Radius 0 maps single cells (F^0 is the radius-0 identity).
struct BlockMap {
    int radius = 0;
    std::vector<std::uint8_t> table; // size 2^(2*radius+1)

    std::uint8_t apply(std::uint32_t window) const { return table[window]; }
};

inline constexpr std::uint64_t default_table_cap = 1ull << 25;

/// Table of F^t as a block map of radius r*t; t >= 0.
BlockMap compose_block_map(const Rule& rule, int t, std::uint64_t table_cap = default_table_cap);

/// Table of F^t as a Rule of radius r*t; t >= 1.
Rule compose_rule(const Rule& rule, int t, std::uint64_t table_cap = default_table_cap);

/// Exact equality of the global maps induced by two block maps (the
/// smaller-radius table is compared after widening by ignored border cells).
bool block_maps_equal(const BlockMap& a, const BlockMap& b);

bool block_map_is_constant(const BlockMap& m, std::uint8_t* value = nullptr);

struct EventualPeriodicity {
    int preperiod = 0; // m
    int period = 1;    // p'
    friend bool operator==(const EventualPeriodicity&, const EventualPeriodicity&) = default;
};

/// Least (m, p') in lexicographic order with m <= m_max, 1 <= p' <= p_max and
/// F^(m+p') = F^m as global maps; absent if none in range. Absence within
/// bounds proves nothing beyond the bounds.
std::optional<EventualPeriodicity> check_eventually_periodic(
    const Rule& rule, int m_max, int p_max, std::uint64_t table_cap = default_table_cap);

struct Nilpotency {
    int value = 0; // the constant symbol q
    int time = 0;  // least T with F^T constant
    friend bool operator==(const Nilpotency&, const Nilpotency&) = default;
};

/// Least T <= t_max such that F^T is a constant map; absent otherwise.
/// Absence does not prove non-nilpotence (bounded search only).
std::optional<Nilpotency> check_nilpotent_bounded(const Rule& rule, int t_max,
                                                  std::uint64_t table_cap = default_table_cap);

} // namespace cactl
