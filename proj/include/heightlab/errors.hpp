#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace heightlab {

/// Raised when a computation would exceed a configured size limit
/// (d^n for generic iterates, t-degree for orbits, polynomial degree
/// for factorization). Maps to CLI exit code 3.
class ResourceCapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Syntax error in a polynomial expression; `position` is a 0-based
/// character offset into the input.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// A checked mathematical property failed (e.g. an exact division that
/// must succeed left a remainder). Maps to CLI exit code 1.
class PropertyViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace heightlab
