#pragma once

#include <stdexcept>
#include <string>

namespace germ {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed textual input. `position` is a byte offset into the source text.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg + " (at position " + std::to_string(position) + ")"),
          position(position) {}
    std::size_t position;
};

// Structurally invalid file content (bad JSON shape, dangling names, parity
// violations).
struct SchemaError : Error {
    using Error::Error;
};

// An operation was called outside its stated domain.
struct PreconditionError : Error {
    using Error::Error;
};

// A jet-order or arity truncation did not stabilize; results at the requested
// order are not certified.
struct UnstableError : Error {
    using Error::Error;
};

// A requested operation would push data past the configured arity window.
struct TruncationError : Error {
    using Error::Error;
};

// A structural invariant failed (delta^2 != W*Id, A-infinity relations, ...).
struct InvariantError : Error {
    using Error::Error;
};

}  // namespace germ
