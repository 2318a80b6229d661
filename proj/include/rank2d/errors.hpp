#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rank2d {

/// Malformed input data (edge lists, subset files, rank tables).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    /// 1-based line number, 0 when the error is not tied to a line.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A caller broke a documented precondition.
class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace rank2d
