#pragma once

#include "cactl/errors.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cactl {

/// A finite binary word over A = {0,1}, e.g. the contents of the controlled
/// region. The integer encoding puts the leftmost cell in the most
/// significant bit: enc(w) = sum w[i] * 2^(n-1-i). The textual form is the
/// n-character binary string read left to right.
class RegionWord {
public:
    static constexpr int max_length = 63;

    RegionWord() = default;
    RegionWord(int length, std::uint64_t bits);

    static RegionWord from_string(std::string_view text);

    int length() const { return length_; }
    std::uint64_t bits() const { return bits_; }

    /// Cell value at position i, 0-indexed from the left.
    int cell(int i) const;

    /// Subword of `count` cells starting at position `from` (left-indexed).
    RegionWord slice(int from, int count) const;

    /// Concatenation, left-to-right.
    RegionWord concat(const RegionWord& right) const;

    std::string str() const;

    friend bool operator==(const RegionWord&, const RegionWord&) = default;
    friend auto operator<=>(const RegionWord&, const RegionWord&) = default;

private:
    int length_ = 0;
    std::uint64_t bits_ = 0;
};

/// One step's boundary control: the words written on the r cells to the left
/// and to the right of the region. Control indices order pairs as
/// enc(left) * 2^r + enc(right).
struct ControlPair {
    RegionWord left;
    RegionWord right;

    ControlPair() = default;
    ControlPair(RegionWord l, RegionWord r);

    int radius() const { return left.length(); }
    std::uint32_t index() const {
        return static_cast<std::uint32_t>((left.bits() << left.length()) | right.bits());
    }
    static ControlPair from_index(int radius, std::uint32_t index);

    friend bool operator==(const ControlPair&, const ControlPair&) = default;
};

struct TrajectoryRow {
    RegionWord word;
    std::optional<ControlPair> control; // control applied at this step, absent on the final row
};

/// A controlled run on the region: rows[t] holds the word at time t and the
/// control taking it to time t+1. Horizon T = rows - 1.
struct Trajectory {
    std::string rule_name;
    int region_length = 0;
    std::vector<TrajectoryRow> rows;

    int horizon() const { return static_cast<int>(rows.size()) - 1; }
};

} // namespace cactl
