#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace curv4 {

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad expression text, bad manifest, unknown target,
/// invalid CLI arguments. Maps to exit code 2.
struct input_error : error {
    using error::error;
};

/// Expression syntax error; `offset` is the byte position in the source.
struct parse_error : input_error {
    parse_error(const std::string& msg, std::size_t off)
        : input_error(msg + " (at byte " + std::to_string(off) + ")"), offset(off) {}
    std::size_t offset;
};

/// Evaluation left the expression's domain (log of non-positive, sqrt of
/// negative, division by zero) or produced a non-finite number.
struct domain_error : error {
    using error::error;
};

/// Numeric precondition failure: non-SPD metric, boundary-margin violation,
/// quadrature breakdown. Maps to exit code 3.
struct numeric_error : error {
    using error::error;
};

}  // namespace curv4
