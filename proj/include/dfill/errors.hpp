#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dfill {

// Malformed input graphs, dangling ids, count mismatches.
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An operation was called outside its domain (odd p, wrong parity, ...).
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace dfill
