#pragma once

#include <stdexcept>
#include <string>

namespace equirr {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad user input: malformed job files, non-group tables, invalid branch data.
// The CLI maps these to exit code 2.
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Wrong invocation: unknown command, command/divisor kind mismatch.
// The CLI maps these to exit code 1.
struct UsageError : Error {
    explicit UsageError(const std::string& msg) : Error(msg) {}
};

// An internal identity that must hold for valid inputs failed.
// The CLI maps these to exit code 3.
struct ConsistencyError : Error {
    explicit ConsistencyError(const std::string& msg) : Error(msg) {}
};

} // namespace equirr
