#pragma once

#include <stdexcept>
#include <string>

namespace cactl {

// Malformed user input: bad rule spec, wrong word length, non-binary digits.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A configured cap would be exceeded (table size, region length, enumeration width).
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// An operation was called outside its stated precondition.
struct precondition_error : std::logic_error {
    explicit precondition_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace cactl
