#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace depthdegen {

/// Raised when an argument violates a documented precondition
/// (width below 2, angle outside the supported range, malformed config).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed architecture spec text. `line()` is 1-based.
class ParseError : public ValidationError {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : ValidationError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A NaN appeared somewhere other than the absorbing state.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace depthdegen
