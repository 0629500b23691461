#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chartdist {

/// Malformed concrete syntax. `position` is a 0-based character offset
/// into the input (or a 1-based line number for line-oriented formats).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Ill-typed morphism or diagram (interface mismatch, wrong arity).
class TypeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configured state cap or iteration cap was exceeded.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace chartdist
