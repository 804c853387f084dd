#include "cactl/word.hpp"

#include <cassert>

namespace cactl {

RegionWord::RegionWord(int length, std::uint64_t bits) : length_(length), bits_(bits) {
    if (length < 0 || length > max_length)
        throw input_error("word length " + std::to_string(length) + " outside [0, " +
                          std::to_string(max_length) + "]");
    if (length < 64 && (bits >> length) != 0)
        throw input_error("word encoding does not fit in " + std::to_string(length) + " cells");
}

RegionWord RegionWord::from_string(std::string_view text) {
    if (text.size() > static_cast<std::size_t>(max_length))
        throw input_error("word longer than " + std::to_string(max_length) + " cells");
    std::uint64_t bits = 0;
    for (char c : text) {
        if (c != '0' && c != '1')
            throw input_error("word must be a binary string, got '" + std::string(text) + "'");
        bits = (bits << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return RegionWord(static_cast<int>(text.size()), bits);
}

int RegionWord::cell(int i) const {
    if (i < 0 || i >= length_)
        throw input_error("cell index " + std::to_string(i) + " outside word of length " +
                          std::to_string(length_));
    return static_cast<int>((bits_ >> (length_ - 1 - i)) & 1u);
}

RegionWord RegionWord::slice(int from, int count) const {
    if (from < 0 || count < 0 || from + count > length_)
        throw input_error("slice [" + std::to_string(from) + ", " + std::to_string(from + count) +
                          ") outside word of length " + std::to_string(length_));
    if (count == 0) return RegionWord();
    std::uint64_t bits = (bits_ >> (length_ - from - count)) & ((count < 64) ? ((1ull << count) - 1) : ~0ull);
    return RegionWord(count, bits);
}

RegionWord RegionWord::concat(const RegionWord& right) const {
    return RegionWord(length_ + right.length_, (bits_ << right.length_) | right.bits_);
}

std::string RegionWord::str() const {
    std::string s(static_cast<std::size_t>(length_), '0');
    for (int i = 0; i < length_; ++i)
        if ((bits_ >> (length_ - 1 - i)) & 1u) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

ControlPair::ControlPair(RegionWord l, RegionWord r) : left(std::move(l)), right(std::move(r)) {
    if (left.length() != right.length())
        throw input_error("control pair sides must have equal length, got " +
                          std::to_string(left.length()) + " and " + std::to_string(right.length()));
}

ControlPair ControlPair::from_index(int radius, std::uint32_t index) {
    if (radius < 1 || radius > 15)
        throw input_error("control radius must be in [1, 15]");
    const std::uint32_t side = 1u << radius;
    if (index >= side * side)
        throw input_error("control index " + std::to_string(index) + " outside [0, 2^" +
                          std::to_string(2 * radius) + ")");
    return ControlPair(RegionWord(radius, index >> radius), RegionWord(radius, index & (side - 1)));
}

} // namespace cactl
